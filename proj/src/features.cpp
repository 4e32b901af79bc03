#include "crisispulse/features.hpp"

#include <cstdio>
#include <set>

#include <json.hpp>

#include "crisispulse/csv.hpp"
#include "crisispulse/errors.hpp"
#include "crisispulse/text.hpp"

namespace crisispulse::feat {

using nlohmann::json;

namespace {

bool matches_ascii_ci(const std::vector<char32_t>& cps, std::size_t i,
                      std::string_view pat) {
  if (i + pat.size() > cps.size()) return false;
  for (std::size_t k = 0; k < pat.size(); ++k) {
    char32_t cp = cps[i + k];
    if (cp >= 'A' && cp <= 'Z') cp += 0x20;
    if (cp != static_cast<unsigned char>(pat[k])) return false;
  }
  return true;
}

// Lowercases a raw token and strips everything but letters and digits, the
// same normalization the cleaning pass applies inside a word.
std::string normalize_raw_token(std::string_view token) {
  std::string out;
  std::size_t i = 0;
  while (i < token.size()) {
    char32_t cp = text::decode_utf8(token, i);
    cp = text::lower_turkish(cp);
    if (text::is_letter(cp) || text::is_ascii_digit(cp)) text::append_utf8(out, cp);
  }
  return out;
}

}  // namespace

std::vector<std::string> extract_mentions(std::string_view raw_text) {
  const auto cps = text::to_codepoints(raw_text);
  std::vector<std::string> mentions;
  std::size_t i = 0;
  while (i < cps.size()) {
    const bool boundary = i == 0 || !text::is_word_char(cps[i - 1]);
    if (cps[i] == '@' && boundary) {
      std::size_t j = i + 1;
      while (j < cps.size() && text::is_handle_char(cps[j])) ++j;
      const std::size_t run = j - i - 1;
      if (run >= 1 && run <= 15) {
        std::string name;
        for (std::size_t k = i + 1; k < j; ++k) text::append_utf8(name, cps[k]);
        mentions.push_back(std::move(name));
        i = j;
        continue;
      }
    }
    ++i;
  }
  return mentions;
}

std::pair<std::vector<std::string>, int> extract_hashtags(
    std::string_view raw_text) {
  const auto cps = text::to_codepoints(raw_text);
  std::vector<std::string> tags;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (cps[i] == '#' && i + 1 < cps.size() && text::is_word_char(cps[i + 1])) {
      std::size_t j = i + 1;
      std::string tag;
      while (j < cps.size() && text::is_word_char(cps[j])) {
        text::append_utf8(tag, text::lower_simple(cps[j]));
        ++j;
      }
      tags.push_back(std::move(tag));
      i = j;
    } else {
      ++i;
    }
  }
  const int n = static_cast<int>(tags.size());
  return {std::move(tags), n};
}

int count_urls(std::string_view raw_text) {
  const auto cps = text::to_codepoints(raw_text);
  int count = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    const bool boundary = i == 0 || !text::is_word_char(cps[i - 1]);
    if (boundary && (matches_ascii_ci(cps, i, "http://") ||
                     matches_ascii_ci(cps, i, "https://") ||
                     matches_ascii_ci(cps, i, "www."))) {
      ++count;
      while (i < cps.size() && !text::is_space(cps[i])) ++i;
    } else {
      ++i;
    }
  }
  return count;
}

TweetFeatures extract_features(const ingest::RawTweet& raw,
                               const prep::CleanTweet& clean,
                               const prep::StopwordSet& stopwords) {
  TweetFeatures f;
  f.mentions = extract_mentions(raw.text);
  auto [tags, tag_count] = extract_hashtags(raw.text);
  f.hashtags = std::move(tags);
  f.hashtag_count = tag_count;
  f.url_count = count_urls(raw.text);

  const auto raw_tokens = text::split_whitespace(raw.text);
  f.raw_word_count = static_cast<int>(raw_tokens.size());
  for (const auto& tok : raw_tokens) {
    if (stopwords.count(normalize_raw_token(tok))) ++f.stopword_count;
  }

  f.clean_word_count = static_cast<int>(clean.tokens.size());
  f.word_count_diff = f.raw_word_count - f.clean_word_count;
  f.unique_word_count = static_cast<int>(
      std::set<std::string>(clean.tokens.begin(), clean.tokens.end()).size());

  f.raw_char_count = static_cast<int>(text::codepoint_count(raw.text));
  f.clean_char_count = static_cast<int>(text::codepoint_count(clean.clean_text));
  if (f.clean_word_count > 0) {
    // clean_text is tokens joined by single spaces
    const int letters = f.clean_char_count - (f.clean_word_count - 1);
    f.avg_word_length = static_cast<double>(letters) / f.clean_word_count;
  }
  return f;
}

TweetFeatures extract_features(const prep::CleanTweet& clean,
                               const prep::StopwordSet& stopwords) {
  ingest::RawTweet raw;
  raw.text = clean.raw_text;
  return extract_features(raw, clean, stopwords);
}

const std::vector<std::string> kCsvHeader = {
    "tweet_id",      "mentions",          "hashtags",
    "hashtag_count", "url_count",         "raw_word_count",
    "clean_word_count", "unique_word_count", "stopword_count",
    "avg_word_length",  "raw_char_count",    "clean_char_count",
    "word_count_diff"};

namespace {

std::string join_space(std::span<const std::string> items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out.push_back(' ');
    out += items[i];
  }
  return out;
}

std::string format_avg(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::string to_csv(std::span<const FeatureRow> rows) {
  std::string out;
  csv::append_row(out, kCsvHeader);
  for (const auto& r : rows) {
    const auto& f = r.features;
    const std::vector<std::string> fields = {
        r.tweet_id,
        join_space(f.mentions),
        join_space(f.hashtags),
        std::to_string(f.hashtag_count),
        std::to_string(f.url_count),
        std::to_string(f.raw_word_count),
        std::to_string(f.clean_word_count),
        std::to_string(f.unique_word_count),
        std::to_string(f.stopword_count),
        format_avg(f.avg_word_length),
        std::to_string(f.raw_char_count),
        std::to_string(f.clean_char_count),
        std::to_string(f.word_count_diff)};
    csv::append_row(out, fields);
  }
  return out;
}

std::string to_jsonl(std::span<const FeatureRow> rows) {
  std::string out;
  for (const auto& r : rows) {
    const auto& f = r.features;
    const json obj = {{"tweet_id", r.tweet_id},
                      {"mentions", f.mentions},
                      {"hashtags", f.hashtags},
                      {"hashtag_count", f.hashtag_count},
                      {"url_count", f.url_count},
                      {"raw_word_count", f.raw_word_count},
                      {"clean_word_count", f.clean_word_count},
                      {"unique_word_count", f.unique_word_count},
                      {"stopword_count", f.stopword_count},
                      {"avg_word_length", f.avg_word_length},
                      {"raw_char_count", f.raw_char_count},
                      {"clean_char_count", f.clean_char_count},
                      {"word_count_diff", f.word_count_diff}};
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<FeatureRow> from_jsonl(std::string_view data) {
  std::vector<FeatureRow> rows;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    const std::string_view line = data.substr(pos, eol - pos);
    pos = eol + 1;
    if (text::trim(line).empty()) continue;
    const json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded()) {
      throw ParseError("bad features.jsonl line", std::string(line.substr(0, 80)));
    }
    FeatureRow r;
    r.tweet_id = obj.at("tweet_id").get<std::string>();
    auto& f = r.features;
    f.mentions = obj.at("mentions").get<std::vector<std::string>>();
    f.hashtags = obj.at("hashtags").get<std::vector<std::string>>();
    f.hashtag_count = obj.at("hashtag_count").get<int>();
    f.url_count = obj.at("url_count").get<int>();
    f.raw_word_count = obj.at("raw_word_count").get<int>();
    f.clean_word_count = obj.at("clean_word_count").get<int>();
    f.unique_word_count = obj.at("unique_word_count").get<int>();
    f.stopword_count = obj.at("stopword_count").get<int>();
    f.avg_word_length = obj.at("avg_word_length").get<double>();
    f.raw_char_count = obj.at("raw_char_count").get<int>();
    f.clean_char_count = obj.at("clean_char_count").get<int>();
    f.word_count_diff = obj.at("word_count_diff").get<int>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace crisispulse::feat
