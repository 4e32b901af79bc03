#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crisispulse/timeutil.hpp"

namespace crisispulse::ingest {

// One exported tweet record. The id stays a decimal string end to end:
// real tweet ids do not fit a double.
struct RawTweet {
  std::string hashtag;       // query tag that fetched the record, '#' optional
  std::string datetime_raw;  // as exported
  std::string tweet_id;      // nonempty ASCII digits
  std::string text;          // may be empty at this stage
  std::string username;      // nonempty, no leading '@'
};

enum class ErrorReason { missing_field, bad_id, bad_row };

struct RecordError {
  std::size_t line_number = 0;  // physical input line
  ErrorReason reason = ErrorReason::bad_row;
  std::string detail;
};

struct TagManifest {
  std::vector<std::string> tags;  // lowercase, unique, no '#'
  Date date_from;
  Date date_to;

  bool contains(std::string_view normalized_tag) const;
};

enum class InputFormat { csv, jsonl };

struct ParseResult {
  std::vector<RawTweet> records;
  std::vector<RecordError> errors;
};

struct FilterResult {
  std::vector<RawTweet> records;
  std::size_t datetime_skip_count = 0;  // rows with unparseable datetimes
};

// Every input data row becomes exactly one RawTweet or one RecordError, in
// input order. CSV needs the exact header hashtag,datetime,tweet_id,text,
// username (that order); JSONL needs exactly those five keys per object.
// A malformed header throws ValidationError.
ParseResult parse_records(std::string_view source, InputFormat format);

// Manifest config file with keys tags, date_from, date_to. Tags are
// lowercased and '#'-stripped; literal repeats collapse, but two distinct
// spellings normalizing to the same tag are rejected.
TagManifest load_tag_manifest(const std::string& path);
TagManifest parse_tag_manifest(std::string_view text);

// Keeps records whose normalized hashtag is in the manifest and whose date
// is inside [date_from, date_to]. Unparseable datetimes are skipped and
// tallied. Order preserved.
FilterResult filter_by_manifest(std::span<const RawTweet> records,
                                const TagManifest& manifest);

// Tag normalization used for manifest matching: plain lowercase (dotless-i
// rules do not apply here), leading '#' stripped.
std::string normalize_tag(std::string_view tag);

std::string to_jsonl(const RawTweet& t);
std::string to_jsonl(std::span<const RawTweet> records);

}  // namespace crisispulse::ingest
