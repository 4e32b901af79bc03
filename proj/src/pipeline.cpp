#include "crisispulse/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "crisispulse/analytics.hpp"
#include "crisispulse/config.hpp"
#include "crisispulse/errors.hpp"
#include "crisispulse/features.hpp"
#include "crisispulse/ingest.hpp"
#include "crisispulse/prep.hpp"
#include "crisispulse/sentiment.hpp"
#include "crisispulse/svg.hpp"
#include "json.hpp"

namespace crisispulse::pipeline {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kKnownKeys = {
    "input",          "input_format",     "manifest",
    "out",            "stopwords",        "suffixes",
    "seed",           "lda_topics",       "lda_alpha",
    "lda_beta",       "lda_iterations",   "lda_burn_in",
    "lda_min_df",     "lda_max_df_ratio", "topic_top_words",
    "sentiment_mode", "sentiment_corpus", "sentiment_corpus_format",
    "sentiment_model", "sentiment_scores", "sentiment_smoothing",
    "sentiment_train_ratio"};

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  return p.is_absolute() ? p : base / p;
}

bool parse_format_is_jsonl(const std::string& value, const char* key) {
  if (value == "csv") return false;
  if (value == "jsonl") return true;
  throw ValidationError(std::string(key) + " must be csv or jsonl, got '" +
                        value + "'");
}

std::string slurp(const fs::path& p) { return read_file(p.string()); }

void emit(StageResult& result, const fs::path& path, std::string_view data) {
  write_file(path.string(), data);
  result.artifacts.push_back(path.string());
}

std::vector<prep::CleanTweet> load_clean(const RunConfig& c) {
  return prep::from_jsonl(slurp(c.out / "clean.jsonl"));
}

prep::StopwordSet load_stopword_set(const RunConfig& c) {
  if (c.stopwords.empty()) return prep::default_stopwords();
  const auto words = prep::load_wordlist(c.stopwords.string());
  return prep::StopwordSet(words.begin(), words.end());
}

std::vector<std::string> load_suffix_table(const RunConfig& c) {
  if (c.suffixes.empty()) return prep::default_suffixes();
  return prep::load_wordlist(c.suffixes.string());
}

std::vector<std::string> pipeline_tokens(const std::string& text,
                                         const prep::StopwordSet& stopwords,
                                         std::span<const std::string> suffixes) {
  const auto tokens = prep::tokenize(prep::clean_text(text));
  auto kept = prep::remove_stopwords(tokens, stopwords);
  for (auto& tok : kept) tok = prep::strip_suffixes(tok, suffixes);
  return kept;
}

nlohmann::json table_entries(const analytics::FrequencyTable& table,
                             std::size_t top_n) {
  nlohmann::json rows = nlohmann::json::array();
  const std::size_t n = std::min(top_n, table.entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    nlohmann::json row;
    row["key"] = table.entries[i].first;
    row["count"] = table.entries[i].second;
    row["percent"] = analytics::percent_string(table.entries[i].second, table.total);
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json ngram_entries(const analytics::NgramTable& table,
                             std::size_t top_n) {
  nlohmann::json rows = nlohmann::json::array();
  const std::size_t n = std::min(top_n, table.entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    nlohmann::json row;
    row["key"] = analytics::ngram_key(table.entries[i].first);
    row["count"] = table.entries[i].second;
    row["percent"] = analytics::percent_string(table.entries[i].second, table.total);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

RunConfig load_run_config(const fs::path& path) {
  const auto kv = KeyValueConfig::load(path.string());
  for (const auto& key : kv.keys())
    if (!kKnownKeys.count(key))
      throw ValidationError("unknown config key: " + key);

  const fs::path base = path.parent_path();
  RunConfig c;
  c.input = resolve(base, kv.require("input"));
  c.input_jsonl =
      parse_format_is_jsonl(kv.get_or("input_format", "csv"), "input_format");
  c.manifest = resolve(base, kv.require("manifest"));
  c.out = resolve(base, kv.get_or("out", "out"));
  if (kv.has("stopwords")) c.stopwords = resolve(base, kv.require("stopwords"));
  if (kv.has("suffixes")) c.suffixes = resolve(base, kv.require("suffixes"));

  if (const auto seed = kv.get_int("seed")) {
    if (*seed < 0) throw ValidationError("seed must not be negative");
    c.seed = static_cast<std::uint64_t>(*seed);
  }

  if (const auto v = kv.get_int("lda_topics")) c.lda.topics = static_cast<int>(*v);
  if (const auto v = kv.get_double("lda_alpha")) c.lda.alpha = *v;
  if (const auto v = kv.get_double("lda_beta")) c.lda.beta = *v;
  if (const auto v = kv.get_int("lda_iterations"))
    c.lda.iterations = static_cast<int>(*v);
  if (const auto v = kv.get_int("lda_burn_in")) c.lda.burn_in = static_cast<int>(*v);
  c.lda.validate();

  if (const auto v = kv.get_int("lda_min_df")) c.lda_min_df = static_cast<int>(*v);
  if (const auto v = kv.get_double("lda_max_df_ratio")) c.lda_max_df_ratio = *v;
  if (const auto v = kv.get_int("topic_top_words")) {
    if (*v < 1) throw ValidationError("topic_top_words must be at least 1");
    c.topic_top_words = static_cast<int>(*v);
  }

  const std::string mode = kv.get_or("sentiment_mode", "train");
  if (mode == "train")
    c.sentiment_mode = SentimentMode::train;
  else if (mode == "apply")
    c.sentiment_mode = SentimentMode::apply;
  else if (mode == "import")
    c.sentiment_mode = SentimentMode::import_scores;
  else
    throw ValidationError("sentiment_mode must be train, apply or import, got '" +
                          mode + "'");

  int sources = 0;
  if (kv.has("sentiment_corpus")) {
    c.sentiment_corpus = resolve(base, kv.require("sentiment_corpus"));
    ++sources;
  }
  if (kv.has("sentiment_model")) {
    c.sentiment_model = resolve(base, kv.require("sentiment_model"));
    ++sources;
  }
  if (kv.has("sentiment_scores")) {
    c.sentiment_scores = resolve(base, kv.require("sentiment_scores"));
    ++sources;
  }
  if (sources != 1)
    throw ValidationError(
        "exactly one of sentiment_corpus, sentiment_model, sentiment_scores "
        "must be set");
  if (c.sentiment_mode == SentimentMode::train && c.sentiment_corpus.empty())
    throw ValidationError("sentiment_mode train needs sentiment_corpus");
  if (c.sentiment_mode == SentimentMode::apply && c.sentiment_model.empty())
    throw ValidationError("sentiment_mode apply needs sentiment_model");
  if (c.sentiment_mode == SentimentMode::import_scores &&
      c.sentiment_scores.empty())
    throw ValidationError("sentiment_mode import needs sentiment_scores");

  c.sentiment_corpus_jsonl = parse_format_is_jsonl(
      kv.get_or("sentiment_corpus_format", "csv"), "sentiment_corpus_format");
  if (const auto v = kv.get_double("sentiment_smoothing")) {
    if (*v <= 0) throw ValidationError("sentiment_smoothing must be positive");
    c.sentiment_smoothing = *v;
  }
  if (const auto v = kv.get_double("sentiment_train_ratio")) {
    if (*v <= 0 || *v >= 1)
      throw ValidationError("sentiment_train_ratio must be inside (0, 1)");
    c.sentiment_train_ratio = *v;
  }
  return c;
}

StageResult run_ingest(const RunConfig& c) {
  StageResult result;
  const auto source = slurp(c.input);
  const auto parsed = ingest::parse_records(
      source, c.input_jsonl ? ingest::InputFormat::jsonl : ingest::InputFormat::csv);
  const auto manifest = ingest::load_tag_manifest(c.manifest.string());
  auto filtered = ingest::filter_by_manifest(parsed.records, manifest);

  emit(result, c.out / "raw.jsonl", ingest::to_jsonl(filtered.records));

  nlohmann::json report;
  report["input_records"] = parsed.records.size() + parsed.errors.size();
  report["parsed_records"] = parsed.records.size();
  report["kept_records"] = filtered.records.size();
  report["datetime_skips"] = filtered.datetime_skip_count;
  nlohmann::json errs = nlohmann::json::array();
  for (const auto& e : parsed.errors) {
    nlohmann::json row;
    row["line"] = e.line_number;
    switch (e.reason) {
      case ingest::ErrorReason::missing_field: row["reason"] = "missing_field"; break;
      case ingest::ErrorReason::bad_id: row["reason"] = "bad_id"; break;
      case ingest::ErrorReason::bad_row: row["reason"] = "bad_row"; break;
    }
    row["detail"] = e.detail;
    errs.push_back(std::move(row));
  }
  report["record_errors"] = std::move(errs);
  emit(result, c.out / "ingest_report.json", report.dump(1) + "\n");

  result.notes.push_back("parsed " + std::to_string(parsed.records.size()) +
                         " records, " + std::to_string(parsed.errors.size()) +
                         " malformed");
  result.notes.push_back("kept " + std::to_string(filtered.records.size()) +
                         " after tag/date filter (" +
                         std::to_string(filtered.datetime_skip_count) +
                         " unparseable datetimes)");
  return result;
}

StageResult run_clean(const RunConfig& c) {
  StageResult result;
  const auto parsed =
      ingest::parse_records(slurp(c.out / "raw.jsonl"), ingest::InputFormat::jsonl);
  if (!parsed.errors.empty())
    throw ValidationError("raw.jsonl is damaged at line " +
                          std::to_string(parsed.errors.front().line_number));

  const auto stopwords = load_stopword_set(c);
  const auto suffixes = load_suffix_table(c);
  const auto prep_result = prep::preprocess(parsed.records, stopwords, suffixes);

  emit(result, c.out / "clean.jsonl", prep::to_jsonl(prep_result.tweets));

  nlohmann::json report;
  report["input_count"] = prep_result.report.input_count;
  report["duplicate_count"] = prep_result.report.duplicate_count;
  report["empty_text_count"] = prep_result.report.empty_text_count;
  report["datetime_error_count"] = prep_result.report.datetime_error_count;
  report["output_count"] = prep_result.report.output_count;
  emit(result, c.out / "prep_report.json", report.dump(1) + "\n");

  result.notes.push_back(
      std::to_string(prep_result.report.input_count) + " in, " +
      std::to_string(prep_result.report.output_count) + " out (" +
      std::to_string(prep_result.report.duplicate_count) + " duplicates, " +
      std::to_string(prep_result.report.empty_text_count) + " empty, " +
      std::to_string(prep_result.report.datetime_error_count) + " bad datetimes)");
  return result;
}

StageResult run_features(const RunConfig& c) {
  StageResult result;
  const auto tweets = load_clean(c);
  const auto stopwords = load_stopword_set(c);

  std::vector<feat::FeatureRow> rows;
  rows.reserve(tweets.size());
  for (const auto& tweet : tweets)
    rows.push_back({tweet.tweet_id, feat::extract_features(tweet, stopwords)});

  emit(result, c.out / "features.csv", feat::to_csv(rows));
  emit(result, c.out / "features.jsonl", feat::to_jsonl(rows));
  result.notes.push_back("extracted features for " + std::to_string(rows.size()) +
                         " tweets");
  return result;
}

StageResult run_topics(const RunConfig& c) {
  StageResult result;
  const auto tweets = load_clean(c);

  std::vector<std::vector<std::string>> docs;
  docs.reserve(tweets.size());
  for (const auto& tweet : tweets) docs.push_back(tweet.tokens);

  const auto vocab = lda::build_vocabulary(docs, c.lda_min_df, c.lda_max_df_ratio);
  auto lda_config = c.lda;
  lda_config.seed = c.seed;
  const auto model = lda::fit_lda(docs, vocab, lda_config);

  emit(result, c.out / "topics.json", lda::save_model(model));
  emit(result, c.out / "topics.csv", lda::topic_report_csv(model, c.topic_top_words));

  result.notes.push_back("fitted " + std::to_string(model.config.topics) +
                         " topics over " + std::to_string(model.vocab.size()) +
                         " words; " + std::to_string(model.skipped_docs.size()) +
                         " docs had no in-vocabulary token");
  for (const auto& w : model.warnings) result.notes.push_back("warning: " + w);
  return result;
}

StageResult run_sentiment(const RunConfig& c) {
  StageResult result;
  const auto tweets = load_clean(c);

  std::vector<sentiment::Prediction> predictions;
  if (c.sentiment_mode == SentimentMode::import_scores) {
    const auto imported =
        sentiment::import_external_scores(slurp(c.sentiment_scores));
    std::unordered_map<std::string_view, const sentiment::Prediction*> by_id;
    for (const auto& p : imported.predictions) by_id.emplace(p.tweet_id, &p);

    std::size_t matched = 0;
    for (const auto& tweet : tweets) {
      auto it = by_id.find(tweet.tweet_id);
      if (it == by_id.end()) continue;
      predictions.push_back(*it->second);
      ++matched;
    }
    const std::size_t unmatched = imported.predictions.size() - matched;

    nlohmann::json report;
    report["imported"] = imported.predictions.size();
    report["matched"] = matched;
    report["unmatched"] = unmatched;
    report["rejected"] = imported.rejected;
    emit(result, c.out / "sentiment_import_report.json", report.dump(1) + "\n");

    result.notes.push_back("imported " +
                           std::to_string(imported.predictions.size()) +
                           " score rows (" + std::to_string(imported.rejected.size()) +
                           " rejected)");
    if (unmatched)
      result.notes.push_back("warning: " + std::to_string(unmatched) +
                             " scores reference unknown tweet ids");
    if (matched < tweets.size())
      result.notes.push_back("warning: " + std::to_string(tweets.size() - matched) +
                             " tweets have no external score");
  } else {
    sentiment::Model model;
    if (c.sentiment_mode == SentimentMode::train) {
      const auto stopwords = load_stopword_set(c);
      const auto suffixes = load_suffix_table(c);
      const auto corpus = sentiment::parse_labeled_corpus(
          slurp(c.sentiment_corpus), c.sentiment_corpus_jsonl);

      std::vector<sentiment::LabeledDoc> docs;
      std::size_t dropped = 0;
      for (const auto& [text, label] : corpus) {
        sentiment::LabeledDoc doc;
        doc.tokens = pipeline_tokens(text, stopwords, suffixes);
        doc.label = label;
        if (doc.tokens.empty())
          ++dropped;
        else
          docs.push_back(std::move(doc));
      }
      if (dropped)
        result.notes.push_back("warning: " + std::to_string(dropped) +
                               " labeled docs were empty after cleaning");

      auto [train_docs, test_docs] =
          sentiment::split_train_test(docs, c.sentiment_train_ratio, c.seed);
      model = sentiment::train(train_docs, c.sentiment_smoothing);
      const auto metrics = sentiment::evaluate(model, test_docs);

      emit(result, c.out / "sentiment_model.json", sentiment::save_model(model));
      emit(result, c.out / "sentiment_metrics.json",
           sentiment::metrics_to_json(metrics));

      char acc[32];
      std::snprintf(acc, sizeof(acc), "%.3f", metrics.accuracy);
      result.notes.push_back("trained on " + std::to_string(train_docs.size()) +
                             " docs, held-out accuracy " + acc + " on " +
                             std::to_string(test_docs.size()));
    } else {
      model = sentiment::load_model(slurp(c.sentiment_model));
    }

    predictions.reserve(tweets.size());
    for (const auto& tweet : tweets) {
      auto p = sentiment::predict(model, tweet.tokens);
      p.tweet_id = tweet.tweet_id;
      predictions.push_back(std::move(p));
    }
  }

  emit(result, c.out / "sentiment.jsonl",
       sentiment::predictions_to_jsonl(predictions));
  result.notes.push_back("wrote " + std::to_string(predictions.size()) +
                         " predictions");
  return result;
}

StageResult run_report(const RunConfig& c) {
  StageResult result;
  const auto tweets = load_clean(c);
  const auto rows = feat::from_jsonl(slurp(c.out / "features.jsonl"));
  const auto predictions =
      sentiment::predictions_from_jsonl(slurp(c.out / "sentiment.jsonl"));
  const auto model = lda::load_model(slurp(c.out / "topics.json"));
  const auto manifest = ingest::load_tag_manifest(c.manifest.string());

  std::vector<std::vector<std::string>> docs;
  docs.reserve(tweets.size());
  for (const auto& tweet : tweets) docs.push_back(tweet.tokens);

  const auto hashtags = analytics::tag_frequency(tweets);
  const auto mentions = analytics::mention_frequency(rows);
  const auto users = analytics::user_activity(tweets);
  const auto links = analytics::link_distribution(rows);
  const auto unigrams = analytics::ngram_counts(docs, 1);
  const auto bigrams = analytics::ngram_counts(docs, 2);
  const auto trigrams = analytics::ngram_counts(docs, 3);
  const auto temporal = analytics::temporal_histograms(
      tweets, predictions, manifest.date_from, manifest.date_to);

  emit(result, c.out / "tables" / "hashtags.csv", analytics::table_to_csv(hashtags));
  emit(result, c.out / "tables" / "mentions.csv", analytics::table_to_csv(mentions));
  emit(result, c.out / "tables" / "users.csv", analytics::table_to_csv(users));
  emit(result, c.out / "tables" / "links.csv", analytics::table_to_csv(links));
  emit(result, c.out / "tables" / "monthly.csv",
       analytics::table_to_csv(temporal.monthly));
  emit(result, c.out / "tables" / "hourly.csv",
       analytics::table_to_csv(temporal.hourly));
  emit(result, c.out / "tables" / "unigrams.csv", analytics::ngrams_to_csv(unigrams));
  emit(result, c.out / "tables" / "bigrams.csv", analytics::ngrams_to_csv(bigrams));
  emit(result, c.out / "tables" / "trigrams.csv", analytics::ngrams_to_csv(trigrams));
  emit(result, c.out / "tables" / "daily.csv", analytics::daily_to_csv(temporal.daily));

  nlohmann::json report;
  report["corpus"]["tweet_count"] = tweets.size();
  report["corpus"]["date_from"] = manifest.date_from.to_string();
  report["corpus"]["date_to"] = manifest.date_to.to_string();

  nlohmann::json link_rows = nlohmann::json::array();
  for (const auto& [bucket, count] : links.entries) {
    nlohmann::json row;
    row["bucket"] = bucket;
    row["count"] = count;
    row["percent"] = analytics::percent_string(count, links.total);
    link_rows.push_back(std::move(row));
  }
  report["link_distribution"] = std::move(link_rows);

  nlohmann::json daily_rows = nlohmann::json::array();
  std::array<std::int64_t, 4> sentiment_totals{};  // neg, neu, pos, unscored
  for (const auto& day : temporal.daily) {
    nlohmann::json row;
    row["date"] = day.date.to_string();
    row["negative"] = day.negative;
    row["neutral"] = day.neutral;
    row["positive"] = day.positive;
    row["unscored"] = day.unscored;
    row["total"] = day.total;
    daily_rows.push_back(std::move(row));
    sentiment_totals[0] += day.negative;
    sentiment_totals[1] += day.neutral;
    sentiment_totals[2] += day.positive;
    sentiment_totals[3] += day.unscored;
  }
  report["daily"] = std::move(daily_rows);
  report["sentiment"]["negative"] = sentiment_totals[0];
  report["sentiment"]["neutral"] = sentiment_totals[1];
  report["sentiment"]["positive"] = sentiment_totals[2];
  report["sentiment"]["unscored"] = sentiment_totals[3];

  report["monthly"] = table_entries(temporal.monthly, temporal.monthly.entries.size());
  report["hourly"] = table_entries(temporal.hourly, temporal.hourly.entries.size());
  report["top_hashtags"] = table_entries(hashtags, 20);
  report["top_mentions"] = table_entries(mentions, 20);
  report["top_users"] = table_entries(users, 20);
  report["top_unigrams"] = ngram_entries(unigrams, 20);
  report["top_bigrams"] = ngram_entries(bigrams, 20);
  report["top_trigrams"] = ngram_entries(trigrams, 20);

  nlohmann::json topics = nlohmann::json::array();
  for (int k = 0; k < model.config.topics; ++k) {
    nlohmann::json entry;
    entry["topic_id"] = k;
    nlohmann::json words = nlohmann::json::array();
    for (const auto& [word, prob] : lda::top_words(model, k, c.topic_top_words)) {
      nlohmann::json w;
      w["word"] = word;
      w["probability"] = prob;
      words.push_back(std::move(w));
    }
    entry["words"] = std::move(words);
    topics.push_back(std::move(entry));
  }
  report["topics"] = std::move(topics);

  report["warnings"]["unmatched_predictions"] = temporal.unmatched_predictions;
  report["warnings"]["unscored_tweets"] = temporal.unscored_tweets;
  emit(result, c.out / "report.json", report.dump(1) + "\n");

  // Charts.
  svg::BarChart daily_chart;
  daily_chart.title = "Tweets per day by sentiment";
  svg::Series neg{"negative", {}, "#d62728"};
  svg::Series neu{"neutral", {}, "#8c8c8c"};
  svg::Series pos{"positive", {}, "#2ca02c"};
  for (const auto& day : temporal.daily) {
    daily_chart.labels.push_back(day.date.to_string());
    neg.values.push_back(static_cast<double>(day.negative));
    neu.values.push_back(static_cast<double>(day.neutral));
    pos.values.push_back(static_cast<double>(day.positive));
  }
  daily_chart.series = {neg, neu, pos};
  emit(result, c.out / "charts" / "daily_sentiment.svg",
       svg::render_bar_chart(daily_chart));

  auto table_chart = [](const analytics::FrequencyTable& table,
                        const std::string& title) {
    svg::BarChart chart;
    chart.title = title;
    svg::Series series{"count", {}, ""};
    const std::size_t n = std::min<std::size_t>(20, table.entries.size());
    for (std::size_t i = 0; i < n; ++i) {
      chart.labels.push_back(table.entries[i].first);
      series.values.push_back(static_cast<double>(table.entries[i].second));
    }
    chart.series.push_back(std::move(series));
    return chart;
  };
  if (!hashtags.entries.empty())
    emit(result, c.out / "charts" / "top_hashtags.svg",
         svg::render_bar_chart(table_chart(hashtags, "Most used hashtags")));
  if (!mentions.entries.empty())
    emit(result, c.out / "charts" / "top_mentions.svg",
         svg::render_bar_chart(table_chart(mentions, "Most mentioned users")));

  std::vector<std::string> topic_lines;
  for (int k = 0; k < model.config.topics; ++k) {
    std::string line = "Topic " + std::to_string(k) + ":";
    for (const auto& [word, prob] : lda::top_words(model, k, c.topic_top_words)) {
      line += ' ';
      line += word;
    }
    topic_lines.push_back(std::move(line));
  }
  emit(result, c.out / "charts" / "topic_words.svg",
       svg::render_text_panel("Topic top words", topic_lines));

  result.notes.push_back("report covers " + std::to_string(tweets.size()) +
                         " tweets across " + std::to_string(temporal.daily.size()) +
                         " days");
  if (temporal.unmatched_predictions)
    result.notes.push_back("warning: " +
                           std::to_string(temporal.unmatched_predictions) +
                           " predictions reference unknown tweet ids");
  return result;
}

StageResult run_all(const RunConfig& c) {
  StageResult total;
  for (auto stage : {run_ingest, run_clean, run_features, run_topics,
                     run_sentiment, run_report}) {
    auto r = stage(c);
    total.artifacts.insert(total.artifacts.end(), r.artifacts.begin(),
                           r.artifacts.end());
    total.notes.insert(total.notes.end(), r.notes.begin(), r.notes.end());
  }
  return total;
}

}  // namespace crisispulse::pipeline
