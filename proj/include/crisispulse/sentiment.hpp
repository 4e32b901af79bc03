#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace crisispulse::sentiment {

// Fixed label order; argmax ties resolve to the earliest label.
enum class Label : int { negative = 0, neutral = 1, positive = 2 };
inline constexpr int kNumLabels = 3;
inline constexpr std::array<std::string_view, kNumLabels> kLabelNames = {
    "negative", "neutral", "positive"};

std::string_view to_string(Label label);
Label label_from_string(std::string_view name);  // throws ValidationError

struct LabeledDoc {
  std::vector<std::string> tokens;
  Label label = Label::neutral;
};

struct Model {
  std::vector<std::string> vocabulary;  // sorted lexicographically
  std::unordered_map<std::string, int> index;
  std::array<double, kNumLabels> class_log_priors{};
  // [label][word id], each row exponentiates and sums to 1
  std::array<std::vector<double>, kNumLabels> word_log_likelihoods;
  double smoothing = 1.0;

  int vocab_size() const { return static_cast<int>(vocabulary.size()); }
};

struct Prediction {
  std::string tweet_id;  // empty outside pipeline contexts
  Label label = Label::neutral;
  std::array<double, kNumLabels> scores{};  // posterior, sums to 1
};

struct EvalMetrics {
  double accuracy = 0.0;
  std::array<double, kNumLabels> precision{};
  std::array<double, kNumLabels> recall{};
  std::array<double, kNumLabels> f1{};
  std::array<std::array<std::int64_t, kNumLabels>, kNumLabels> confusion{};  // [true][pred]
};

// Stratified split, deterministic under seed; both halves keep corpus order.
// Every class needs at least 2 docs. Per class the train share is
// round(n * ratio) clamped to [1, n-1].
std::pair<std::vector<LabeledDoc>, std::vector<LabeledDoc>> split_train_test(
    std::span<const LabeledDoc> docs, double train_ratio, std::uint64_t seed);

// Multinomial bag-of-words estimates with additive smoothing; requires all
// three labels and nonempty token lists.
Model train(std::span<const LabeledDoc> docs, double smoothing = 1.0);

// Posterior over labels; out-of-vocabulary tokens are ignored, so an empty
// or fully unknown input scores at the class priors.
Prediction predict(const Model& model, std::span<const std::string> tokens);

EvalMetrics evaluate(const Model& model, std::span<const LabeledDoc> test_docs);

struct ImportResult {
  std::vector<Prediction> predictions;
  std::vector<std::string> rejected;  // "line N: reason"
};

// JSONL rows {tweet_id, negative, neutral, positive}: scores must be >= 0
// and sum to 1 within 1e-6; accepted rows are renormalized exactly and the
// label set to the argmax. Malformed rows land in `rejected`.
ImportResult import_external_scores(std::string_view jsonl);

// Labeled corpus text: CSV with header text,label or JSONL {text, label}.
std::vector<std::pair<std::string, Label>> parse_labeled_corpus(
    std::string_view text, bool jsonl);

std::string save_model(const Model& model);
Model load_model(std::string_view json_text);

std::string metrics_to_json(const EvalMetrics& metrics);

// One JSONL row per prediction: {label, negative, neutral, positive, tweet_id}.
std::string predictions_to_jsonl(std::span<const Prediction> predictions);
std::vector<Prediction> predictions_from_jsonl(std::string_view text);

}  // namespace crisispulse::sentiment
