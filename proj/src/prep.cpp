#include "crisispulse/prep.hpp"

#include <algorithm>

#include <json.hpp>

#include "crisispulse/config.hpp"
#include "crisispulse/errors.hpp"
#include "crisispulse/text.hpp"

namespace crisispulse::prep {

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

bool url_starts_at(const std::vector<char32_t>& cps, std::size_t i) {
  return matches_ascii_ci(cps, i, "http://") ||
         matches_ascii_ci(cps, i, "https://") || matches_ascii_ci(cps, i, "www.");
}

std::vector<char32_t> remove_urls(const std::vector<char32_t>& cps) {
  std::vector<char32_t> out;
  out.reserve(cps.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    const bool boundary = i == 0 || !text::is_word_char(cps[i - 1]);
    if (boundary && url_starts_at(cps, i)) {
      while (i < cps.size() && !text::is_space(cps[i])) ++i;
    } else {
      out.push_back(cps[i++]);
    }
  }
  return out;
}

std::vector<char32_t> remove_mentions(const std::vector<char32_t>& cps) {
  std::vector<char32_t> out;
  out.reserve(cps.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    const bool boundary = i == 0 || !text::is_word_char(cps[i - 1]);
    if (cps[i] == '@' && boundary) {
      std::size_t j = i + 1;
      while (j < cps.size() && text::is_handle_char(cps[j])) ++j;
      const std::size_t run = j - i - 1;
      if (run >= 1 && run <= 15) {
        i = j;  // drop '@' and the handle
        continue;
      }
    }
    out.push_back(cps[i++]);
  }
  return out;
}

}  // namespace

std::pair<std::vector<ingest::RawTweet>, std::size_t> dedupe(
    std::span<const ingest::RawTweet> records) {
  std::vector<ingest::RawTweet> kept;
  kept.reserve(records.size());
  std::unordered_set<std::string> seen;
  std::size_t dups = 0;
  for (const auto& r : records) {
    if (seen.insert(r.tweet_id).second) {
      kept.push_back(r);
    } else {
      ++dups;
    }
  }
  return {std::move(kept), dups};
}

std::pair<std::vector<ingest::RawTweet>, std::size_t> drop_missing_text(
    std::span<const ingest::RawTweet> records) {
  std::vector<ingest::RawTweet> kept;
  kept.reserve(records.size());
  std::size_t dropped = 0;
  for (const auto& r : records) {
    bool blank = true;
    std::size_t i = 0;
    while (i < r.text.size()) {
      if (!text::is_space(text::decode_utf8(r.text, i))) {
        blank = false;
        break;
      }
    }
    if (blank) {
      ++dropped;
    } else {
      kept.push_back(r);
    }
  }
  return {std::move(kept), dropped};
}

LocalTimestamp normalize_datetime(std::string_view datetime_raw) {
  const auto ts = parse_timestamp(datetime_raw);
  if (!ts) throw ParseError("unrecognized datetime layout", std::string(datetime_raw));
  return *ts;
}

std::string clean_text(std::string_view raw) {
  auto cps = text::to_codepoints(raw);
  cps = remove_urls(cps);
  cps = remove_mentions(cps);

  std::vector<char32_t> kept;
  kept.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp == '#') continue;
    if (text::is_symbol_or_emoji(cp)) continue;
    if (cp == text::kReplacement) continue;
    cp = text::lower_turkish(cp);
    if (text::is_letter(cp) || text::is_ascii_digit(cp) || text::is_space(cp)) {
      kept.push_back(cp);
    }
  }
  return text::collapse_whitespace(text::from_codepoints(kept));
}

std::vector<std::string> tokenize(std::string_view clean) {
  return text::split_whitespace(clean);
}

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const StopwordSet& stopwords) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stopwords.count(t)) out.push_back(t);
  }
  return out;
}

std::string strip_suffixes(std::string_view token,
                           std::span<const std::string> suffix_table) {
  std::string stem(token);
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t stem_len = text::codepoint_count(stem);
    const std::string* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& suf : suffix_table) {
      if (suf.size() <= best_len || suf.size() >= stem.size()) continue;
      if (!stem.ends_with(suf)) continue;
      if (stem_len - text::codepoint_count(suf) < 2) continue;
      best = &suf;
      best_len = suf.size();
    }
    if (!best) break;
    stem.resize(stem.size() - best->size());
  }
  return stem;
}

bool id_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

PrepResult preprocess(std::span<const ingest::RawTweet> records,
                      const StopwordSet& stopwords,
                      std::span<const std::string> suffix_table) {
  PrepResult res;
  res.report.input_count = records.size();

  auto [unique, dup_count] = dedupe(records);
  res.report.duplicate_count = dup_count;
  auto [with_text, empty_count] = drop_missing_text(unique);
  res.report.empty_text_count = empty_count;

  for (const auto& r : with_text) {
    const auto ts = parse_timestamp(r.datetime_raw);
    if (!ts) {
      ++res.report.datetime_error_count;
      continue;
    }
    CleanTweet c;
    c.tweet_id = r.tweet_id;
    c.timestamp = *ts;
    c.hashtag = r.hashtag;
    c.username = r.username;
    c.raw_text = r.text;
    auto tokens = tokenize(clean_text(r.text));
    tokens = remove_stopwords(tokens, stopwords);
    for (auto& t : tokens) t = strip_suffixes(t, suffix_table);
    std::string joined;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) joined.push_back(' ');
      joined += tokens[i];
    }
    c.clean_text = std::move(joined);
    c.tokens = std::move(tokens);
    res.tweets.push_back(std::move(c));
  }

  std::stable_sort(res.tweets.begin(), res.tweets.end(),
                   [](const CleanTweet& a, const CleanTweet& b) {
                     if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                     return id_less(a.tweet_id, b.tweet_id);
                   });

  res.report.output_count = res.tweets.size();
  return res;
}

std::vector<std::string> parse_wordlist(std::string_view data) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    std::string_view line = data.substr(pos, eol - pos);
    pos = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string entry = text::trim(line);
    if (!entry.empty()) out.push_back(text::lower_turkish(entry));
    if (eol == data.size()) break;
  }
  return out;
}

std::vector<std::string> load_wordlist(const std::string& path) {
  return parse_wordlist(read_file(path));
}

std::string to_jsonl(const CleanTweet& t) {
  const json obj = {{"tweet_id", t.tweet_id},
                    {"timestamp", t.timestamp.to_string()},
                    {"hashtag", t.hashtag},
                    {"username", t.username},
                    {"raw_text", t.raw_text},
                    {"clean_text", t.clean_text},
                    {"tokens", t.tokens}};
  return obj.dump();
}

std::string to_jsonl(std::span<const CleanTweet> tweets) {
  std::string out;
  for (const auto& t : tweets) {
    out += to_jsonl(t);
    out.push_back('\n');
  }
  return out;
}

std::vector<CleanTweet> from_jsonl(std::string_view data) {
  std::vector<CleanTweet> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    std::string_view line = data.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (text::trim(line).empty()) continue;
    const json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw ParseError("clean.jsonl line " + std::to_string(line_no) +
                           " is not a JSON object",
                       std::string(line.substr(0, 80)));
    }
    CleanTweet t;
    t.tweet_id = obj.at("tweet_id").get<std::string>();
    const std::string ts_str = obj.at("timestamp").get<std::string>();
    const auto ts = parse_timestamp(ts_str);
    if (!ts) throw ParseError("bad timestamp in clean.jsonl", ts_str);
    t.timestamp = *ts;
    t.hashtag = obj.at("hashtag").get<std::string>();
    t.username = obj.at("username").get<std::string>();
    t.raw_text = obj.at("raw_text").get<std::string>();
    t.clean_text = obj.at("clean_text").get<std::string>();
    t.tokens = obj.at("tokens").get<std::vector<std::string>>();
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace crisispulse::prep
