#include "crisispulse/analytics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "crisispulse/csv.hpp"
#include "crisispulse/errors.hpp"

namespace crisispulse::analytics {

namespace {

FrequencyTable to_table(std::map<std::string, std::int64_t>&& counts) {
  FrequencyTable table;
  table.entries.reserve(counts.size());
  for (auto& [key, count] : counts) {
    table.total += count;
    table.entries.emplace_back(key, count);
  }
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  return table;
}

}  // namespace

NgramTable ngram_counts(std::span<const std::vector<std::string>> docs, int n) {
  if (n < 1 || n > 3) throw ValidationError("n-gram size must be 1, 2 or 3");

  std::map<std::vector<std::string>, std::int64_t> counts;
  for (const auto& doc : docs) {
    if (doc.size() < static_cast<std::size_t>(n)) continue;
    for (std::size_t i = 0; i + n <= doc.size(); ++i)
      ++counts[std::vector<std::string>(doc.begin() + i, doc.begin() + i + n)];
  }

  NgramTable table;
  table.n = n;
  table.entries.reserve(counts.size());
  for (auto& [gram, count] : counts) {
    table.total += count;
    table.entries.emplace_back(gram, count);
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  return table;
}

FrequencyTable tag_frequency(std::span<const prep::CleanTweet> tweets) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& tweet : tweets)
    for (const auto& tag : feat::extract_hashtags(tweet.raw_text).first)
      ++counts[tag];
  return to_table(std::move(counts));
}

FrequencyTable mention_frequency(std::span<const feat::FeatureRow> rows) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& row : rows)
    for (const auto& user : row.features.mentions) ++counts[user];
  return to_table(std::move(counts));
}

FrequencyTable user_activity(std::span<const prep::CleanTweet> tweets) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& tweet : tweets) ++counts[tweet.username];
  return to_table(std::move(counts));
}

FrequencyTable link_distribution(std::span<const feat::FeatureRow> rows) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& row : rows) {
    const int urls = row.features.url_count;
    ++counts[urls == 0 ? "0" : urls == 1 ? "1" : "2+"];
  }
  return to_table(std::move(counts));
}

TemporalResult temporal_histograms(std::span<const prep::CleanTweet> tweets,
                                   std::span<const sentiment::Prediction> predictions,
                                   Date date_from,
                                   Date date_to) {
  if (date_to < date_from)
    throw ValidationError("date range is inverted");

  TemporalResult result;
  std::unordered_map<std::string_view, sentiment::Label> label_of;
  label_of.reserve(predictions.size());
  std::unordered_map<std::string_view, bool> used;
  for (const auto& p : predictions) {
    if (!label_of.emplace(p.tweet_id, p.label).second)
      ++result.unmatched_predictions;  // duplicate id
    else
      used.emplace(p.tweet_id, false);
  }

  std::map<Date, DailySummary> by_day;
  for (auto d = date_from; !(date_to < d); d = next_day(d))
    by_day[d].date = d;

  std::map<std::string, std::int64_t> monthly;
  std::map<std::string, std::int64_t> hourly;
  for (const auto& tweet : tweets) {
    ++monthly[tweet.timestamp.month_key()];
    char hour_key[8];
    std::snprintf(hour_key, sizeof(hour_key), "%02d", tweet.timestamp.hour);
    ++hourly[hour_key];

    auto day_it = by_day.find(tweet.timestamp.date());
    if (day_it == by_day.end()) continue;  // outside the manifest range
    auto& day = day_it->second;
    ++day.total;

    auto it = label_of.find(tweet.tweet_id);
    if (it == label_of.end()) {
      ++day.unscored;
      ++result.unscored_tweets;
      continue;
    }
    used[it->first] = true;
    switch (it->second) {
      case sentiment::Label::negative: ++day.negative; break;
      case sentiment::Label::neutral: ++day.neutral; break;
      case sentiment::Label::positive: ++day.positive; break;
    }
  }
  for (const auto& [id, was_used] : used)
    if (!was_used) ++result.unmatched_predictions;

  result.monthly = to_table(std::move(monthly));
  result.hourly = to_table(std::move(hourly));
  result.daily.reserve(by_day.size());
  for (auto& [date, day] : by_day) result.daily.push_back(day);
  return result;
}

std::string percent_string(std::int64_t count, std::int64_t total) {
  const double pct =
      total == 0 ? 0.0
                 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", pct);
  return buf;
}

std::string table_to_csv(const FrequencyTable& table) {
  std::string out = "key,count,percent\n";
  for (const auto& [key, count] : table.entries)
    csv::append_row(out, {key, std::to_string(count),
                          percent_string(count, table.total)});
  return out;
}

std::string ngram_key(const std::vector<std::string>& tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key += ' ';
    key += tokens[i];
  }
  return key;
}

std::string ngrams_to_csv(const NgramTable& table) {
  std::string out = "key,count,percent\n";
  for (const auto& [gram, count] : table.entries)
    csv::append_row(out, {ngram_key(gram), std::to_string(count),
                          percent_string(count, table.total)});
  return out;
}

std::string daily_to_csv(std::span<const DailySummary> daily) {
  std::string out = "date,negative,neutral,positive,total\n";
  for (const auto& day : daily)
    csv::append_row(out, {day.date.to_string(), std::to_string(day.negative),
                          std::to_string(day.neutral),
                          std::to_string(day.positive),
                          std::to_string(day.total)});
  return out;
}

}  // namespace crisispulse::analytics
