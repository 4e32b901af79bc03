#include "crisispulse/ingest.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

#include "crisispulse/config.hpp"
#include "crisispulse/csv.hpp"
#include "crisispulse/errors.hpp"
#include "crisispulse/text.hpp"

namespace crisispulse::ingest {

using nlohmann::json;

namespace {

constexpr const char* kFields[5] = {"hashtag", "datetime", "tweet_id", "text",
                                    "username"};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

// nullopt = field present and usable; otherwise an error to report.
std::optional<RecordError> validate(RawTweet& t, std::size_t line) {
  if (t.username.empty()) {
    return RecordError{line, ErrorReason::missing_field, "username is empty"};
  }
  if (t.tweet_id.empty()) {
    return RecordError{line, ErrorReason::missing_field, "tweet_id is empty"};
  }
  if (!all_digits(t.tweet_id)) {
    return RecordError{line, ErrorReason::bad_id,
                       "tweet_id is not a digit string: " + t.tweet_id};
  }
  return std::nullopt;
}

void parse_csv_source(std::string_view source, ParseResult& out) {
  std::string_view body = source;
  if (body.substr(0, 3) == "\xEF\xBB\xBF") body.remove_prefix(3);  // UTF-8 BOM

  const auto rows = csv::parse(body);
  if (rows.empty()) throw ValidationError("CSV input has no header row");
  const auto& header = rows[0].fields;
  bool header_ok = header.size() == 5;
  for (std::size_t i = 0; header_ok && i < 5; ++i) {
    header_ok = header[i] == kFields[i];
  }
  if (!header_ok) {
    throw ValidationError(
        "CSV header must be exactly: hashtag,datetime,tweet_id,text,username");
  }

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::string joined;
    for (const auto& f : row.fields) joined += f;
    if (!text::valid_utf8(joined)) {
      out.errors.push_back(
          {row.line, ErrorReason::bad_row, "row is not valid UTF-8"});
      continue;
    }
    if (row.fields.size() != 5) {
      out.errors.push_back({row.line, ErrorReason::bad_row,
                            "expected 5 fields, got " +
                                std::to_string(row.fields.size())});
      continue;
    }
    RawTweet t{row.fields[0], row.fields[1], row.fields[2], row.fields[3],
               row.fields[4]};
    if (auto err = validate(t, row.line)) {
      out.errors.push_back(std::move(*err));
    } else {
      out.records.push_back(std::move(t));
    }
  }
}

void parse_jsonl_source(std::string_view source, ParseResult& out) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < source.size()) {
    std::size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    std::string_view line = source.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line = line.substr(0, line.size() - 1);
    if (text::trim(line).empty()) continue;

    if (!text::valid_utf8(line)) {
      out.errors.push_back(
          {line_no, ErrorReason::bad_row, "line is not valid UTF-8"});
      continue;
    }
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      out.errors.push_back(
          {line_no, ErrorReason::bad_row, "line is not a JSON object"});
      continue;
    }
    bool keys_ok = obj.size() == 5;
    std::string missing;
    for (const char* k : kFields) {
      if (!obj.contains(k)) {
        missing = k;
        keys_ok = false;
        break;
      }
    }
    if (!missing.empty() && (missing == "tweet_id" || missing == "username")) {
      out.errors.push_back({line_no, ErrorReason::missing_field,
                            "key absent: " + missing});
      continue;
    }
    if (!keys_ok) {
      out.errors.push_back({line_no, ErrorReason::bad_row,
                            missing.empty()
                                ? "object must have exactly the 5 record keys"
                                : "key absent: " + missing});
      continue;
    }

    RawTweet t;
    bool bad = false;
    const auto get_string = [&](const char* key, std::string& dst) {
      const auto& v = obj.at(key);
      if (v.is_string()) {
        dst = v.get<std::string>();
      } else {
        bad = true;
      }
    };
    get_string("hashtag", t.hashtag);
    get_string("datetime", t.datetime_raw);
    get_string("text", t.text);
    get_string("username", t.username);

    // tweet_id may arrive as a JSON integer; floats would round the id.
    const auto& id = obj.at("tweet_id");
    if (id.is_string()) {
      t.tweet_id = id.get<std::string>();
    } else if (id.is_number_integer() && !id.is_number_float()) {
      char buf[32];
      if (id.is_number_unsigned()) {
        std::snprintf(buf, sizeof(buf), "%" PRIu64, id.get<std::uint64_t>());
      } else {
        std::snprintf(buf, sizeof(buf), "%" PRId64, id.get<std::int64_t>());
      }
      t.tweet_id = buf;
    } else if (id.is_number_float()) {
      out.errors.push_back({line_no, ErrorReason::bad_id,
                            "tweet_id is a float; ids must be digit strings"});
      continue;
    } else {
      out.errors.push_back(
          {line_no, ErrorReason::missing_field, "tweet_id is null or absent"});
      continue;
    }
    if (bad) {
      out.errors.push_back(
          {line_no, ErrorReason::bad_row, "non-string value in record"});
      continue;
    }
    if (auto err = validate(t, line_no)) {
      out.errors.push_back(std::move(*err));
    } else {
      out.records.push_back(std::move(t));
    }
  }
}

}  // namespace

ParseResult parse_records(std::string_view source, InputFormat format) {
  ParseResult out;
  if (format == InputFormat::csv) {
    parse_csv_source(source, out);
  } else {
    parse_jsonl_source(source, out);
  }
  return out;
}

std::string normalize_tag(std::string_view tag) {
  std::string_view t = tag;
  if (!t.empty() && t.front() == '#') t.remove_prefix(1);
  return text::lower_simple(t);
}

bool TagManifest::contains(std::string_view normalized_tag) const {
  return std::find(tags.begin(), tags.end(), normalized_tag) != tags.end();
}

TagManifest parse_tag_manifest(std::string_view config_text) {
  const auto cfg = KeyValueConfig::parse(config_text);
  TagManifest m;

  const auto raw_tags = cfg.get_list("tags");
  if (raw_tags.empty()) throw ValidationError("manifest has no tags");
  std::set<std::string> seen_raw;
  std::map<std::string, std::string> normalized_to_raw;
  for (const auto& raw : raw_tags) {
    if (!seen_raw.insert(raw).second) continue;  // literal repeat, collapse
    const std::string norm = normalize_tag(raw);
    if (norm.empty()) throw ValidationError("manifest tag is empty: " + raw);
    const auto [it, inserted] = normalized_to_raw.emplace(norm, raw);
    if (!inserted) {
      throw ValidationError("duplicate tag after normalization: \"" + raw +
                            "\" and \"" + it->second + "\" both become \"" +
                            norm + "\"");
    }
    m.tags.push_back(norm);
  }

  const auto from = parse_date(cfg.require("date_from"));
  const auto to = parse_date(cfg.require("date_to"));
  if (!from) throw ParseError("bad date_from", cfg.require("date_from"));
  if (!to) throw ParseError("bad date_to", cfg.require("date_to"));
  if (*to < *from) {
    throw ValidationError("manifest date range is inverted: " +
                          from->to_string() + " > " + to->to_string());
  }
  m.date_from = *from;
  m.date_to = *to;
  return m;
}

TagManifest load_tag_manifest(const std::string& path) {
  return parse_tag_manifest(read_file(path));
}

FilterResult filter_by_manifest(std::span<const RawTweet> records,
                                const TagManifest& manifest) {
  FilterResult out;
  for (const auto& r : records) {
    if (!manifest.contains(normalize_tag(r.hashtag))) continue;
    const auto ts = parse_timestamp(r.datetime_raw);
    if (!ts) {
      ++out.datetime_skip_count;
      continue;
    }
    const Date d = ts->date();
    if (d < manifest.date_from || manifest.date_to < d) continue;
    out.records.push_back(r);
  }
  return out;
}

std::string to_jsonl(const RawTweet& t) {
  const json obj = {{"hashtag", t.hashtag},
                    {"datetime", t.datetime_raw},
                    {"tweet_id", t.tweet_id},
                    {"text", t.text},
                    {"username", t.username}};
  return obj.dump();
}

std::string to_jsonl(std::span<const RawTweet> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_jsonl(r);
    out.push_back('\n');
  }
  return out;
}

}  // namespace crisispulse::ingest
