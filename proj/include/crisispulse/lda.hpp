#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace crisispulse::lda {

struct Vocabulary {
  std::vector<std::string> words;  // dense ids 0..V-1, sorted (-doc_freq, word)
  std::unordered_map<std::string, int> index;
  std::vector<int> doc_freq;  // documents containing the word, by id

  int size() const { return static_cast<int>(words.size()); }
  int id_of(std::string_view w) const;  // -1 when absent
};

// Words kept when min_df <= doc_freq <= max_df_ratio * D.
// Throws ValidationError when nothing survives.
Vocabulary build_vocabulary(std::span<const std::vector<std::string>> docs,
                            int min_df, double max_df_ratio);

struct LdaConfig {
  int topics = 15;
  double alpha = 0.0;  // <= 0 selects the 50/K default
  double beta = 0.01;
  int iterations = 1000;
  int burn_in = 0;
  std::uint64_t seed = 0;

  // Diagnostics; both off by default.
  bool check_counts_every_sweep = false;
  bool record_perplexity_trace = false;

  double effective_alpha() const { return alpha > 0 ? alpha : 50.0 / topics; }
  void validate() const;
};

struct LdaModel {
  LdaConfig config;
  Vocabulary vocab;

  std::vector<std::vector<int>> docs;         // fitted docs as word ids
  std::vector<int> doc_index;                 // fitted doc -> original position
  std::vector<int> skipped_docs;              // original positions with no in-vocab token
  std::vector<std::vector<int>> assignments;  // z, same shape as docs

  std::vector<std::vector<int>> doc_topic;    // n_dk
  std::vector<std::vector<int>> topic_word;   // n_kw, indexed [k][w]
  std::vector<int> topic_total;               // n_k

  std::vector<std::vector<double>> phi;    // K x V, rows sum to 1
  std::vector<std::vector<double>> theta;  // D x K, rows sum to 1

  std::vector<double> perplexity_trace;  // per sweep, when enabled
  std::vector<std::string> warnings;
};

// The collapsed-Gibbs conditional for one token of word w in doc d, with the
// token's own contribution already removed from the counts:
//
//   p(z = k) ∝ (n_dk + alpha) * (n_kw + beta) / (n_k + V*beta)
//
// Returned normalized to sum 1.
std::vector<double> gibbs_conditional(std::span<const int> doc_topic_row,
                                      const std::vector<std::vector<int>>& topic_word,
                                      std::span<const int> topic_total,
                                      int word, double alpha, double beta,
                                      int vocab_size);

// Random topic init from the seed, then `iterations` full sweeps resampling
// every token. phi and theta are smoothed estimates from the final counts:
//   phi[k][w]   = (n_kw + beta)  / (n_k + V*beta)
//   theta[d][k] = (n_dk + alpha) / (len_d + K*alpha)
LdaModel fit_lda(std::span<const std::vector<std::string>> docs,
                 Vocabulary vocab, const LdaConfig& config);

// Highest-phi words of one topic; ties resolved lexicographically.
// Throws ValidationError for a topic id out of range.
std::vector<std::pair<std::string, double>> top_words(const LdaModel& model,
                                                      int topic, int n);

struct PerplexityResult {
  double value = 0.0;
  int skipped_docs = 0;  // no in-vocabulary token (or not fitted)
};

// exp(-sum log p(w|d) / N) over the corpus the model was fitted on, with
// p(w|d) = sum_k theta[d][k] * phi[k][w].
PerplexityResult perplexity(const LdaModel& model,
                            std::span<const std::vector<std::string>> docs);

// Count identities: per-doc topic sums equal doc lengths, per-topic word
// sums equal topic totals. Throws ValidationError on violation.
void check_count_invariants(const LdaModel& model);

// JSON persistence: config, vocabulary (with doc_freq) and the phi matrix,
// row-major, 10 decimal places. Counts and theta are not persisted.
std::string save_model(const LdaModel& model);
LdaModel load_model(std::string_view json_text);

// Optional binary sidecar for the topic assignments (little-endian).
std::string save_assignments(const LdaModel& model);
std::vector<std::vector<int>> load_assignments(std::string_view data);

// CSV: topic_id,rank,word,probability with the top n words per topic.
std::string topic_report_csv(const LdaModel& model, int top_n);

}  // namespace crisispulse::lda
