#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crisispulse/features.hpp"
#include "crisispulse/prep.hpp"
#include "crisispulse/sentiment.hpp"
#include "crisispulse/timeutil.hpp"

namespace crisispulse::analytics {

struct FrequencyTable {
  std::vector<std::pair<std::string, std::int64_t>> entries;  // (-count, key) order
  std::int64_t total = 0;                                     // sum of counts
};

struct NgramTable {
  int n = 1;
  std::vector<std::pair<std::vector<std::string>, std::int64_t>> entries;
  std::int64_t total = 0;
};

struct DailySummary {
  Date date;
  std::int64_t negative = 0;
  std::int64_t neutral = 0;
  std::int64_t positive = 0;
  std::int64_t unscored = 0;  // tweets without a matching prediction
  std::int64_t total = 0;     // negative + neutral + positive + unscored
};

struct TemporalResult {
  FrequencyTable monthly;  // keys "YYYY-MM"
  FrequencyTable hourly;   // keys "00".."23", observed hours only
  std::vector<DailySummary> daily;  // one row per date in range, zero days included
  std::int64_t unmatched_predictions = 0;  // ids with no tweet (or duplicates)
  std::int64_t unscored_tweets = 0;
};

// Sliding-window n-grams within each doc; nothing crosses doc boundaries.
NgramTable ngram_counts(std::span<const std::vector<std::string>> docs, int n);

// Hashtag occurrences extracted from the raw tweet texts.
FrequencyTable tag_frequency(std::span<const prep::CleanTweet> tweets);

// Mention occurrences from the feature rows (every occurrence counts).
FrequencyTable mention_frequency(std::span<const feat::FeatureRow> rows);

// Tweets per posting username.
FrequencyTable user_activity(std::span<const prep::CleanTweet> tweets);

// URL-count buckets "0", "1", "2+"; only nonempty buckets appear.
FrequencyTable link_distribution(std::span<const feat::FeatureRow> rows);

// Predictions join tweets by id. Tweets outside [date_from, date_to] still
// count in the monthly/hourly tables but cannot appear in the daily series.
TemporalResult temporal_histograms(std::span<const prep::CleanTweet> tweets,
                                   std::span<const sentiment::Prediction> predictions,
                                   Date date_from,
                                   Date date_to);

// count/total as a percentage with one decimal, e.g. "51.0"; "0.0" when the
// total is zero.
std::string percent_string(std::int64_t count, std::int64_t total);

std::string table_to_csv(const FrequencyTable& table);   // key,count,percent
std::string ngrams_to_csv(const NgramTable& table);      // space-joined keys
std::string daily_to_csv(std::span<const DailySummary> daily);
// date,negative,neutral,positive,total

std::string ngram_key(const std::vector<std::string>& tokens);

}  // namespace crisispulse::analytics
