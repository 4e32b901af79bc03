#include "crisispulse/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crisispulse/csv.hpp"
#include "crisispulse/errors.hpp"
#include "crisispulse/rng.hpp"
#include "json.hpp"

namespace crisispulse::sentiment {

std::string_view to_string(Label label) {
  return kLabelNames[static_cast<int>(label)];
}

Label label_from_string(std::string_view name) {
  for (int i = 0; i < kNumLabels; ++i)
    if (kLabelNames[i] == name) return static_cast<Label>(i);
  throw ValidationError("unknown sentiment label: '" + std::string(name) +
                        "' (expected negative, neutral or positive)");
}

std::pair<std::vector<LabeledDoc>, std::vector<LabeledDoc>> split_train_test(
    std::span<const LabeledDoc> docs, double train_ratio, std::uint64_t seed) {
  if (train_ratio <= 0.0 || train_ratio >= 1.0)
    throw ValidationError("train_ratio must be strictly between 0 and 1");

  std::array<std::vector<int>, kNumLabels> by_label;
  for (std::size_t i = 0; i < docs.size(); ++i)
    by_label[static_cast<int>(docs[i].label)].push_back(static_cast<int>(i));

  for (int c = 0; c < kNumLabels; ++c)
    if (by_label[c].size() < 2)
      throw ValidationError("class '" + std::string(kLabelNames[c]) +
                            "' needs at least 2 documents to split");

  Rng rng(seed);
  std::vector<char> in_train(docs.size(), 0);
  for (int c = 0; c < kNumLabels; ++c) {
    auto idx = by_label[c];
    rng.shuffle(idx);
    const auto n = static_cast<long long>(idx.size());
    auto take = std::llround(static_cast<double>(n) * train_ratio);
    take = std::clamp<long long>(take, 1, n - 1);
    for (long long i = 0; i < take; ++i) in_train[idx[i]] = 1;
  }

  std::pair<std::vector<LabeledDoc>, std::vector<LabeledDoc>> out;
  for (std::size_t i = 0; i < docs.size(); ++i)
    (in_train[i] ? out.first : out.second).push_back(docs[i]);
  return out;
}

Model train(std::span<const LabeledDoc> docs, double smoothing) {
  if (smoothing <= 0.0) throw ValidationError("smoothing must be positive");

  std::array<std::int64_t, kNumLabels> doc_counts{};
  std::set<std::string> vocab_set;
  for (const auto& doc : docs) {
    if (doc.tokens.empty())
      throw ValidationError("training documents must have at least one token");
    ++doc_counts[static_cast<int>(doc.label)];
    for (const auto& tok : doc.tokens) vocab_set.insert(tok);
  }
  for (int c = 0; c < kNumLabels; ++c)
    if (doc_counts[c] == 0)
      throw ValidationError("training corpus has no '" +
                            std::string(kLabelNames[c]) + "' documents");

  Model m;
  m.smoothing = smoothing;
  m.vocabulary.assign(vocab_set.begin(), vocab_set.end());
  for (std::size_t i = 0; i < m.vocabulary.size(); ++i)
    m.index.emplace(m.vocabulary[i], static_cast<int>(i));

  const int v = m.vocab_size();
  std::array<std::vector<std::int64_t>, kNumLabels> counts;
  std::array<std::int64_t, kNumLabels> totals{};
  for (int c = 0; c < kNumLabels; ++c) counts[c].assign(v, 0);
  for (const auto& doc : docs) {
    const int c = static_cast<int>(doc.label);
    for (const auto& tok : doc.tokens) {
      ++counts[c][m.index.at(tok)];
      ++totals[c];
    }
  }

  const auto total_docs = static_cast<double>(docs.size());
  for (int c = 0; c < kNumLabels; ++c) {
    m.class_log_priors[c] = std::log(doc_counts[c] / total_docs);
    m.word_log_likelihoods[c].resize(v);
    const double denom = static_cast<double>(totals[c]) + smoothing * v;
    for (int w = 0; w < v; ++w)
      m.word_log_likelihoods[c][w] = std::log((counts[c][w] + smoothing) / denom);
  }
  return m;
}

Prediction predict(const Model& model, std::span<const std::string> tokens) {
  std::array<double, kNumLabels> logit = model.class_log_priors;
  for (const auto& tok : tokens) {
    auto it = model.index.find(tok);
    if (it == model.index.end()) continue;
    for (int c = 0; c < kNumLabels; ++c)
      logit[c] += model.word_log_likelihoods[c][it->second];
  }

  const double shift = *std::max_element(logit.begin(), logit.end());
  double total = 0.0;
  Prediction p;
  for (int c = 0; c < kNumLabels; ++c) {
    p.scores[c] = std::exp(logit[c] - shift);
    total += p.scores[c];
  }
  for (double& s : p.scores) s /= total;

  int best = 0;
  for (int c = 1; c < kNumLabels; ++c)
    if (p.scores[c] > p.scores[best]) best = c;
  p.label = static_cast<Label>(best);
  return p;
}

EvalMetrics evaluate(const Model& model, std::span<const LabeledDoc> test_docs) {
  if (test_docs.empty()) throw ValidationError("test set is empty");

  EvalMetrics m;
  for (const auto& doc : test_docs) {
    const auto pred = predict(model, doc.tokens);
    ++m.confusion[static_cast<int>(doc.label)][static_cast<int>(pred.label)];
  }

  std::int64_t correct = 0;
  for (int c = 0; c < kNumLabels; ++c) correct += m.confusion[c][c];
  m.accuracy = static_cast<double>(correct) / static_cast<double>(test_docs.size());

  for (int c = 0; c < kNumLabels; ++c) {
    std::int64_t row = 0, col = 0;
    for (int o = 0; o < kNumLabels; ++o) {
      row += m.confusion[c][o];
      col += m.confusion[o][c];
    }
    m.precision[c] = col ? static_cast<double>(m.confusion[c][c]) / col : 0.0;
    m.recall[c] = row ? static_cast<double>(m.confusion[c][c]) / row : 0.0;
    const double pr = m.precision[c] + m.recall[c];
    m.f1[c] = pr > 0.0 ? 2.0 * m.precision[c] * m.recall[c] / pr : 0.0;
  }
  return m;
}

ImportResult import_external_scores(std::string_view jsonl) {
  ImportResult result;
  std::set<std::string> seen_ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    const auto nl = jsonl.find('\n', pos);
    std::string_view line = jsonl.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? jsonl.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    auto reject = [&](const std::string& why) {
      result.rejected.push_back("line " + std::to_string(line_no) + ": " + why);
    };

    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) {
      reject("not a JSON object");
      continue;
    }
    static const std::set<std::string> kKeys = {"tweet_id", "negative",
                                               "neutral", "positive"};
    std::set<std::string> keys;
    for (auto it = row.begin(); it != row.end(); ++it) keys.insert(it.key());
    if (keys != kKeys) {
      reject("keys must be exactly tweet_id, negative, neutral, positive");
      continue;
    }

    Prediction p;
    const auto& id = row["tweet_id"];
    if (id.is_string()) {
      p.tweet_id = id.get<std::string>();
    } else if (id.is_number_integer() || id.is_number_unsigned()) {
      p.tweet_id = id.dump();
    } else {
      reject("tweet_id must be a string or integer");
      continue;
    }
    if (p.tweet_id.empty()) {
      reject("tweet_id is empty");
      continue;
    }
    if (!seen_ids.insert(p.tweet_id).second) {
      reject("duplicate tweet_id " + p.tweet_id);
      continue;
    }

    bool ok = true;
    double sum = 0.0;
    for (int c = 0; c < kNumLabels; ++c) {
      const auto& val = row[std::string(kLabelNames[c])];
      if (!val.is_number()) {
        reject(std::string(kLabelNames[c]) + " is not a number");
        ok = false;
        break;
      }
      p.scores[c] = val.get<double>();
      if (p.scores[c] < 0.0 || !std::isfinite(p.scores[c])) {
        reject(std::string(kLabelNames[c]) + " must be a finite value >= 0");
        ok = false;
        break;
      }
      sum += p.scores[c];
    }
    if (!ok) continue;
    if (std::abs(sum - 1.0) > 1e-6) {
      reject("scores sum to " + std::to_string(sum) + ", not 1");
      continue;
    }
    for (double& s : p.scores) s /= sum;

    int best = 0;
    for (int c = 1; c < kNumLabels; ++c)
      if (p.scores[c] > p.scores[best]) best = c;
    p.label = static_cast<Label>(best);
    result.predictions.push_back(std::move(p));
  }
  return result;
}

std::vector<std::pair<std::string, Label>> parse_labeled_corpus(
    std::string_view text, bool jsonl) {
  std::vector<std::pair<std::string, Label>> out;
  if (!jsonl) {
    const auto rows = csv::parse(text);
    if (rows.empty()) throw ValidationError("labeled corpus is empty");
    if (rows[0].fields != std::vector<std::string>{"text", "label"})
      throw ValidationError("labeled corpus header must be exactly text,label");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].fields.size() != 2)
        throw ValidationError("labeled corpus line " +
                              std::to_string(rows[i].line) +
                              " does not have 2 fields");
      out.emplace_back(rows[i].fields[0], label_from_string(rows[i].fields[1]));
    }
    return out;
  }

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object() || row.size() != 2 ||
        !row.contains("text") || !row.contains("label") ||
        !row["text"].is_string() || !row["label"].is_string())
      throw ValidationError("labeled corpus line " + std::to_string(line_no) +
                            " must be {\"text\": ..., \"label\": ...}");
    out.emplace_back(row["text"].get<std::string>(),
                     label_from_string(row["label"].get<std::string>()));
  }
  return out;
}

std::string save_model(const Model& model) {
  nlohmann::json j;
  j["labels"] = kLabelNames;
  j["log_priors"] = model.class_log_priors;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : model.word_log_likelihoods) rows.push_back(row);
  j["log_likelihoods"] = std::move(rows);
  j["smoothing"] = model.smoothing;
  j["vocabulary"] = model.vocabulary;
  return j.dump(1) + "\n";
}

Model load_model(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what(), "");
  }
  try {
    Model m;
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    for (int c = 0; c < kNumLabels; ++c)
      if (labels.size() != kNumLabels || labels[c] != kLabelNames[c])
        throw ValidationError("model label order is not negative/neutral/positive");

    m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < m.vocabulary.size(); ++i)
      if (!m.index.emplace(m.vocabulary[i], static_cast<int>(i)).second)
        throw ValidationError("duplicate word in the model vocabulary");

    const auto priors = j.at("log_priors").get<std::vector<double>>();
    if (priors.size() != kNumLabels)
      throw ValidationError("model must have 3 class priors");
    std::copy(priors.begin(), priors.end(), m.class_log_priors.begin());

    const auto rows = j.at("log_likelihoods").get<std::vector<std::vector<double>>>();
    if (rows.size() != kNumLabels)
      throw ValidationError("model must have 3 likelihood rows");
    for (int c = 0; c < kNumLabels; ++c) {
      if (rows[c].size() != m.vocabulary.size())
        throw ValidationError("likelihood row length does not match the vocabulary");
      m.word_log_likelihoods[c] = rows[c];
    }
    m.smoothing = j.at("smoothing").get<double>();
    if (m.smoothing <= 0.0) throw ValidationError("smoothing must be positive");

    double prior_sum = 0.0;
    for (double lp : m.class_log_priors) prior_sum += std::exp(lp);
    if (std::abs(prior_sum - 1.0) > 1e-9)
      throw ValidationError("class priors do not sum to 1");
    for (int c = 0; c < kNumLabels; ++c) {
      double row_sum = 0.0;
      for (double ll : m.word_log_likelihoods[c]) row_sum += std::exp(ll);
      if (std::abs(row_sum - 1.0) > 1e-9)
        throw ValidationError("class word distribution does not sum to 1");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("model file is incomplete: ") + e.what());
  }
}

std::string metrics_to_json(const EvalMetrics& metrics) {
  nlohmann::json j;
  j["accuracy"] = metrics.accuracy;
  nlohmann::json confusion = nlohmann::json::array();
  for (const auto& row : metrics.confusion) confusion.push_back(row);
  j["confusion"] = std::move(confusion);
  for (int c = 0; c < kNumLabels; ++c) {
    nlohmann::json per;
    per["f1"] = metrics.f1[c];
    per["precision"] = metrics.precision[c];
    per["recall"] = metrics.recall[c];
    j["per_class"][std::string(kLabelNames[c])] = std::move(per);
  }
  return j.dump(1) + "\n";
}

std::string predictions_to_jsonl(std::span<const Prediction> predictions) {
  std::string out;
  for (const auto& p : predictions) {
    nlohmann::json j;
    j["label"] = to_string(p.label);
    for (int c = 0; c < kNumLabels; ++c)
      j[std::string(kLabelNames[c])] = p.scores[c];
    j["tweet_id"] = p.tweet_id;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<Prediction> predictions_from_jsonl(std::string_view text) {
  std::vector<Prediction> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object())
      throw ParseError("prediction line " + std::to_string(line_no) +
                           " is not a JSON object",
                       std::string(line));
    try {
      Prediction p;
      p.tweet_id = row.at("tweet_id").get<std::string>();
      p.label = label_from_string(row.at("label").get<std::string>());
      for (int c = 0; c < kNumLabels; ++c)
        p.scores[c] = row.at(std::string(kLabelNames[c])).get<double>();
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("prediction line " + std::to_string(line_no) + ": " +
                           e.what(),
                       std::string(line));
    }
  }
  return out;
}

}  // namespace crisispulse::sentiment
