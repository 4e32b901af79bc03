#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "crisispulse/lda.hpp"

namespace crisispulse::pipeline {

enum class SentimentMode { train, apply, import_scores };

struct RunConfig {
  std::filesystem::path input;
  bool input_jsonl = false;
  std::filesystem::path manifest;
  std::filesystem::path out = "out";
  std::filesystem::path stopwords;  // empty selects the embedded table
  std::filesystem::path suffixes;   // empty selects the embedded table
  std::uint64_t seed = 42;

  lda::LdaConfig lda;  // seed is taken from the run seed
  int lda_min_df = 1;
  double lda_max_df_ratio = 1.0;
  int topic_top_words = 10;

  SentimentMode sentiment_mode = SentimentMode::train;
  std::filesystem::path sentiment_corpus;  // train
  bool sentiment_corpus_jsonl = false;
  std::filesystem::path sentiment_model;   // apply
  std::filesystem::path sentiment_scores;  // import
  double sentiment_smoothing = 1.0;
  double sentiment_train_ratio = 0.9;
};

// Key-value config file. Relative paths resolve against the file's own
// directory. Unknown keys are rejected, as is more than one sentiment
// source. See the README for the key list.
RunConfig load_run_config(const std::filesystem::path& path);

struct StageResult {
  std::vector<std::string> artifacts;  // files written, absolute paths
  std::vector<std::string> notes;      // tallies and warnings for the console
};

// Each stage reads the previous stage's persisted files from the output
// directory and overwrites only its own outputs. A missing upstream file
// raises MissingInputError.
StageResult run_ingest(const RunConfig& config);
StageResult run_clean(const RunConfig& config);
StageResult run_features(const RunConfig& config);
StageResult run_topics(const RunConfig& config);
StageResult run_sentiment(const RunConfig& config);
StageResult run_report(const RunConfig& config);
StageResult run_all(const RunConfig& config);

}  // namespace crisispulse::pipeline
