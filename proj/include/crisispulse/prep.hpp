#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "crisispulse/ingest.hpp"
#include "crisispulse/timeutil.hpp"

namespace crisispulse::prep {

using StopwordSet = std::unordered_set<std::string>;

struct CleanTweet {
  std::string tweet_id;
  LocalTimestamp timestamp;
  std::string hashtag;
  std::string username;
  std::string raw_text;
  std::string clean_text;           // final tokens joined by single spaces
  std::vector<std::string> tokens;  // lowercase, stemmed, stopword-free
};

struct PrepReport {
  std::size_t input_count = 0;
  std::size_t duplicate_count = 0;
  std::size_t empty_text_count = 0;
  std::size_t datetime_error_count = 0;
  std::size_t output_count = 0;  // input - duplicates - empty - datetime errors
};

struct PrepResult {
  std::vector<CleanTweet> tweets;
  PrepReport report;
};

// First occurrence of each tweet_id wins; order otherwise preserved.
std::pair<std::vector<ingest::RawTweet>, std::size_t> dedupe(
    std::span<const ingest::RawTweet> records);

// Drops records whose text is empty or whitespace-only.
std::pair<std::vector<ingest::RawTweet>, std::size_t> drop_missing_text(
    std::span<const ingest::RawTweet> records);

// Throws ParseError (carrying the raw string) on an unrecognized layout.
LocalTimestamp normalize_datetime(std::string_view datetime_raw);

// The per-text cleaning pass, in order: URLs out, @-mentions out, '#'
// stripped (word kept), emoji/symbols out, Turkish lowercasing, punctuation
// out, whitespace collapsed. Total function; junk in, fewer characters out.
std::string clean_text(std::string_view raw);

std::vector<std::string> tokenize(std::string_view clean);

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const StopwordSet& stopwords);

// Longest-match suffix stripping, at most two passes, never leaving a stem
// under two letters.
std::string strip_suffixes(std::string_view token,
                           std::span<const std::string> suffix_table);

// dedupe -> drop empty text -> normalize datetime -> clean -> tokenize ->
// stopwords -> suffixes. Output sorted by (timestamp, tweet_id).
PrepResult preprocess(std::span<const ingest::RawTweet> records,
                      const StopwordSet& stopwords,
                      std::span<const std::string> suffix_table);

// Numeric order for decimal-digit id strings.
bool id_less(std::string_view a, std::string_view b);

// Embedded Turkish tables; both overridable via load_wordlist files.
const StopwordSet& default_stopwords();
const std::vector<std::string>& default_suffixes();

// Plain text, one entry per line, UTF-8, '#' comments, entries lowercased.
std::vector<std::string> parse_wordlist(std::string_view text);
std::vector<std::string> load_wordlist(const std::string& path);

std::string to_jsonl(const CleanTweet& t);
std::string to_jsonl(std::span<const CleanTweet> tweets);
std::vector<CleanTweet> from_jsonl(std::string_view data);

}  // namespace crisispulse::prep
