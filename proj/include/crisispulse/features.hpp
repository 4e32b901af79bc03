#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crisispulse/ingest.hpp"
#include "crisispulse/prep.hpp"

namespace crisispulse::feat {

// The engineered per-tweet fields. Counts are code points, not bytes.
struct TweetFeatures {
  std::vector<std::string> mentions;  // without '@', verbatim casing, in order
  std::vector<std::string> hashtags;  // without '#', lowercased, in order
  int hashtag_count = 0;
  int url_count = 0;
  int raw_word_count = 0;
  int clean_word_count = 0;
  int unique_word_count = 0;
  int stopword_count = 0;
  double avg_word_length = 0.0;  // letters per clean token, 0 for no tokens
  int raw_char_count = 0;
  int clean_char_count = 0;
  int word_count_diff = 0;  // raw_word_count - clean_word_count
};

struct FeatureRow {
  std::string tweet_id;
  TweetFeatures features;
};

// '@' followed by 1..15 ASCII [A-Za-z0-9_], with a non-word character (or
// string start) before the '@'. Duplicates kept, order kept.
std::vector<std::string> extract_mentions(std::string_view raw_text);

// '#' followed by a run of word characters (Turkish letters included),
// returned lowercased without '#'.
std::pair<std::vector<std::string>, int> extract_hashtags(std::string_view raw_text);

// Maximal runs starting "http://", "https://" or "www.".
int count_urls(std::string_view raw_text);

TweetFeatures extract_features(const ingest::RawTweet& raw,
                               const prep::CleanTweet& clean,
                               const prep::StopwordSet& stopwords);

// Convenience for pipeline stages: clean tweets carry their raw text.
TweetFeatures extract_features(const prep::CleanTweet& clean,
                               const prep::StopwordSet& stopwords);

extern const std::vector<std::string> kCsvHeader;

std::string to_csv(std::span<const FeatureRow> rows);
std::string to_jsonl(std::span<const FeatureRow> rows);
std::vector<FeatureRow> from_jsonl(std::string_view data);

}  // namespace crisispulse::feat
