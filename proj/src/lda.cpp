#include "crisispulse/lda.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "crisispulse/errors.hpp"
#include "crisispulse/csv.hpp"
#include "crisispulse/rng.hpp"
#include "json.hpp"

namespace crisispulse::lda {

int Vocabulary::id_of(std::string_view w) const {
  auto it = index.find(std::string(w));
  return it == index.end() ? -1 : it->second;
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> docs,
                            int min_df, double max_df_ratio) {
  if (min_df < 1) throw ValidationError("min_df must be at least 1");
  if (max_df_ratio <= 0.0 || max_df_ratio > 1.0)
    throw ValidationError("max_df_ratio must be in (0, 1]");

  std::map<std::string, int> df;
  for (const auto& doc : docs) {
    std::set<std::string_view> seen;
    for (const auto& tok : doc)
      if (seen.insert(tok).second) ++df[tok];
  }

  const double max_df = max_df_ratio * static_cast<double>(docs.size());
  std::vector<std::pair<std::string, int>> kept;
  for (auto& [word, freq] : df)
    if (freq >= min_df && static_cast<double>(freq) <= max_df)
      kept.emplace_back(word, freq);

  if (kept.empty())
    throw ValidationError(
        "vocabulary is empty; relax the min_df/max_df_ratio thresholds");

  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocabulary vocab;
  vocab.words.reserve(kept.size());
  vocab.doc_freq.reserve(kept.size());
  for (auto& [word, freq] : kept) {
    vocab.index.emplace(word, static_cast<int>(vocab.words.size()));
    vocab.words.push_back(std::move(word));
    vocab.doc_freq.push_back(freq);
  }
  return vocab;
}

void LdaConfig::validate() const {
  if (topics < 1) throw ValidationError("topic count must be at least 1");
  if (topics > 65535) throw ValidationError("topic count is implausibly large");
  if (alpha < 0.0) throw ValidationError("alpha must not be negative");
  if (beta <= 0.0) throw ValidationError("beta must be positive");
  if (iterations < 1) throw ValidationError("iterations must be at least 1");
  if (burn_in < 0 || burn_in >= iterations)
    throw ValidationError("burn_in must be in [0, iterations)");
}

namespace {

// Unnormalized conditional weights into `out` (sized K).
void conditional_weights(std::span<const int> doc_topic_row,
                         const std::vector<std::vector<int>>& topic_word,
                         std::span<const int> topic_total, int word,
                         double alpha, double beta, int vocab_size,
                         std::vector<double>& out) {
  const int k_count = static_cast<int>(doc_topic_row.size());
  const double v_beta = vocab_size * beta;
  for (int k = 0; k < k_count; ++k) {
    out[k] = (doc_topic_row[k] + alpha) * (topic_word[k][word] + beta) /
             (topic_total[k] + v_beta);
  }
}

double perplexity_from_counts(const LdaModel& m) {
  const int k_count = m.config.topics;
  const int v = m.vocab.size();
  const double alpha = m.config.effective_alpha();
  const double beta = m.config.beta;
  const double v_beta = v * beta;

  double log_sum = 0.0;
  std::size_t n_tokens = 0;
  for (std::size_t d = 0; d < m.docs.size(); ++d) {
    const double len = static_cast<double>(m.docs[d].size());
    for (int w : m.docs[d]) {
      double p = 0.0;
      for (int k = 0; k < k_count; ++k) {
        const double theta = (m.doc_topic[d][k] + alpha) / (len + k_count * alpha);
        const double phi = (m.topic_word[k][w] + beta) / (m.topic_total[k] + v_beta);
        p += theta * phi;
      }
      log_sum += std::log(p);
      ++n_tokens;
    }
  }
  return std::exp(-log_sum / static_cast<double>(n_tokens));
}

}  // namespace

std::vector<double> gibbs_conditional(std::span<const int> doc_topic_row,
                                      const std::vector<std::vector<int>>& topic_word,
                                      std::span<const int> topic_total,
                                      int word, double alpha, double beta,
                                      int vocab_size) {
  if (doc_topic_row.size() != topic_word.size() ||
      doc_topic_row.size() != topic_total.size())
    throw ValidationError("inconsistent count dimensions");
  if (word < 0 || vocab_size <= word)
    throw ValidationError("word id out of range");

  std::vector<double> weights(doc_topic_row.size());
  conditional_weights(doc_topic_row, topic_word, topic_total, word, alpha,
                      beta, vocab_size, weights);
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return weights;
}

void check_count_invariants(const LdaModel& m) {
  long long grand = 0;
  for (std::size_t d = 0; d < m.docs.size(); ++d) {
    long long sum = 0;
    for (int c : m.doc_topic[d]) {
      if (c < 0) throw ValidationError("negative doc-topic count");
      sum += c;
    }
    if (sum != static_cast<long long>(m.docs[d].size()))
      throw ValidationError("doc-topic counts do not sum to the document length");
    grand += sum;
  }
  long long topic_sum = 0;
  for (int k = 0; k < m.config.topics; ++k) {
    long long sum = 0;
    for (int c : m.topic_word[k]) {
      if (c < 0) throw ValidationError("negative topic-word count");
      sum += c;
    }
    if (sum != m.topic_total[k])
      throw ValidationError("topic-word counts do not sum to the topic total");
    topic_sum += sum;
  }
  if (grand != topic_sum)
    throw ValidationError("doc-topic and topic-word totals disagree");
}

LdaModel fit_lda(std::span<const std::vector<std::string>> docs,
                 Vocabulary vocab, const LdaConfig& config) {
  config.validate();
  if (vocab.size() == 0) throw ValidationError("vocabulary is empty");

  LdaModel m;
  m.config = config;
  m.config.alpha = config.effective_alpha();
  m.vocab = std::move(vocab);

  for (std::size_t p = 0; p < docs.size(); ++p) {
    std::vector<int> ids;
    ids.reserve(docs[p].size());
    for (const auto& tok : docs[p]) {
      int id = m.vocab.id_of(tok);
      if (id >= 0) ids.push_back(id);
    }
    if (ids.empty()) {
      m.skipped_docs.push_back(static_cast<int>(p));
    } else {
      m.docs.push_back(std::move(ids));
      m.doc_index.push_back(static_cast<int>(p));
    }
  }
  if (m.docs.empty())
    throw ValidationError("no document contains an in-vocabulary token");

  const int k_count = m.config.topics;
  const int v = m.vocab.size();
  const double alpha = m.config.alpha;
  const double beta = m.config.beta;

  std::size_t n_tokens = 0;
  for (const auto& d : m.docs) n_tokens += d.size();
  if (static_cast<std::size_t>(k_count) > n_tokens)
    m.warnings.push_back("more topics than tokens; most topics will stay empty");

  m.doc_topic.assign(m.docs.size(), std::vector<int>(k_count, 0));
  m.topic_word.assign(k_count, std::vector<int>(v, 0));
  m.topic_total.assign(k_count, 0);
  m.assignments.resize(m.docs.size());

  Rng rng(m.config.seed);
  for (std::size_t d = 0; d < m.docs.size(); ++d) {
    m.assignments[d].resize(m.docs[d].size());
    for (std::size_t i = 0; i < m.docs[d].size(); ++i) {
      const int k = static_cast<int>(rng.below(static_cast<std::uint32_t>(k_count)));
      m.assignments[d][i] = k;
      ++m.doc_topic[d][k];
      ++m.topic_word[k][m.docs[d][i]];
      ++m.topic_total[k];
    }
  }

  std::vector<double> weights(k_count);
  for (int sweep = 0; sweep < m.config.iterations; ++sweep) {
    for (std::size_t d = 0; d < m.docs.size(); ++d) {
      auto& doc = m.docs[d];
      auto& z = m.assignments[d];
      auto& nd = m.doc_topic[d];
      for (std::size_t i = 0; i < doc.size(); ++i) {
        const int w = doc[i];
        const int old_k = z[i];
        --nd[old_k];
        --m.topic_word[old_k][w];
        --m.topic_total[old_k];

        conditional_weights(nd, m.topic_word, m.topic_total, w, alpha, beta,
                            v, weights);
        double total = 0.0;
        for (double x : weights) total += x;
        const double target = rng.unit() * total;
        double cum = 0.0;
        int new_k = k_count - 1;
        for (int k = 0; k < k_count; ++k) {
          cum += weights[k];
          if (target < cum) {
            new_k = k;
            break;
          }
        }

        z[i] = new_k;
        ++nd[new_k];
        ++m.topic_word[new_k][w];
        ++m.topic_total[new_k];
      }
    }
    if (m.config.check_counts_every_sweep) check_count_invariants(m);
    if (m.config.record_perplexity_trace)
      m.perplexity_trace.push_back(perplexity_from_counts(m));
  }

  m.phi.assign(k_count, std::vector<double>(v));
  const double v_beta = v * beta;
  for (int k = 0; k < k_count; ++k)
    for (int w = 0; w < v; ++w)
      m.phi[k][w] = (m.topic_word[k][w] + beta) / (m.topic_total[k] + v_beta);

  m.theta.assign(m.docs.size(), std::vector<double>(k_count));
  for (std::size_t d = 0; d < m.docs.size(); ++d) {
    const double len = static_cast<double>(m.docs[d].size());
    for (int k = 0; k < k_count; ++k)
      m.theta[d][k] = (m.doc_topic[d][k] + alpha) / (len + k_count * alpha);
  }
  return m;
}

std::vector<std::pair<std::string, double>> top_words(const LdaModel& model,
                                                      int topic, int n) {
  if (topic < 0 || topic >= static_cast<int>(model.phi.size()))
    throw ValidationError("topic id out of range");
  if (n < 1) throw ValidationError("word count must be at least 1");

  const auto& row = model.phi[topic];
  std::vector<int> order(row.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (row[a] != row[b]) return row[a] > row[b];
    return model.vocab.words[a] < model.vocab.words[b];
  });

  const int take = std::min<int>(n, static_cast<int>(order.size()));
  std::vector<std::pair<std::string, double>> out;
  out.reserve(take);
  for (int i = 0; i < take; ++i)
    out.emplace_back(model.vocab.words[order[i]], row[order[i]]);
  return out;
}

PerplexityResult perplexity(const LdaModel& model,
                            std::span<const std::vector<std::string>> docs) {
  std::vector<int> row_of(docs.size(), -1);
  for (std::size_t r = 0; r < model.doc_index.size(); ++r) {
    const int p = model.doc_index[r];
    if (p >= 0 && static_cast<std::size_t>(p) < row_of.size())
      row_of[p] = static_cast<int>(r);
  }

  PerplexityResult result;
  double log_sum = 0.0;
  std::size_t n_tokens = 0;
  for (std::size_t p = 0; p < docs.size(); ++p) {
    const int row = row_of[p];
    std::vector<int> ids;
    for (const auto& tok : docs[p]) {
      int id = model.vocab.id_of(tok);
      if (id >= 0) ids.push_back(id);
    }
    if (row < 0 || ids.empty()) {
      ++result.skipped_docs;
      continue;
    }
    for (int w : ids) {
      double prob = 0.0;
      for (std::size_t k = 0; k < model.phi.size(); ++k)
        prob += model.theta[row][k] * model.phi[k][w];
      log_sum += std::log(prob);
      ++n_tokens;
    }
  }
  if (n_tokens == 0)
    throw ValidationError("no in-vocabulary tokens to score");
  result.value = std::exp(-log_sum / static_cast<double>(n_tokens));
  return result;
}

std::string save_model(const LdaModel& model) {
  nlohmann::json config;
  config["alpha"] = model.config.effective_alpha();
  config["beta"] = model.config.beta;
  config["burn_in"] = model.config.burn_in;
  config["iterations"] = model.config.iterations;
  config["seed"] = model.config.seed;
  config["topics"] = model.config.topics;

  std::string out = "{\n";
  out += "\"config\": " + config.dump() + ",\n";
  out += "\"doc_freq\": " + nlohmann::json(model.vocab.doc_freq).dump() + ",\n";
  out += "\"phi\": [\n";
  char buf[32];
  for (std::size_t k = 0; k < model.phi.size(); ++k) {
    out += '[';
    for (std::size_t w = 0; w < model.phi[k].size(); ++w) {
      std::snprintf(buf, sizeof(buf), "%.10f", model.phi[k][w]);
      if (w) out += ',';
      out += buf;
    }
    out += ']';
    if (k + 1 < model.phi.size()) out += ',';
    out += '\n';
  }
  out += "],\n";
  out += "\"vocabulary\": " + nlohmann::json(model.vocab.words).dump() + "\n";
  out += "}\n";
  return out;
}

LdaModel load_model(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what(), "");
  }
  try {
    LdaModel m;
    const auto& c = j.at("config");
    m.config.topics = c.at("topics").get<int>();
    m.config.alpha = c.at("alpha").get<double>();
    m.config.beta = c.at("beta").get<double>();
    m.config.iterations = c.at("iterations").get<int>();
    m.config.burn_in = c.at("burn_in").get<int>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.validate();

    m.vocab.words = j.at("vocabulary").get<std::vector<std::string>>();
    m.vocab.doc_freq = j.at("doc_freq").get<std::vector<int>>();
    if (m.vocab.doc_freq.size() != m.vocab.words.size())
      throw ValidationError("doc_freq length does not match the vocabulary");
    for (std::size_t i = 0; i < m.vocab.words.size(); ++i)
      if (!m.vocab.index.emplace(m.vocab.words[i], static_cast<int>(i)).second)
        throw ValidationError("duplicate word in the vocabulary");

    m.phi = j.at("phi").get<std::vector<std::vector<double>>>();
    if (m.phi.size() != static_cast<std::size_t>(m.config.topics))
      throw ValidationError("phi row count does not match the topic count");
    for (const auto& row : m.phi)
      if (row.size() != m.vocab.words.size())
        throw ValidationError("phi row length does not match the vocabulary");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("model file is incomplete: ") + e.what());
  }
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t get_u32(std::string_view data, std::size_t& pos) {
  if (pos + 4 > data.size()) throw ParseError("truncated assignment data", "");
  auto b = [&](int i) { return static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + i])); };
  std::uint32_t v = b(0) | (b(1) << 8) | (b(2) << 16) | (b(3) << 24);
  pos += 4;
  return v;
}

}  // namespace

std::string save_assignments(const LdaModel& model) {
  std::string out = "CPZ1";
  put_u32(out, static_cast<std::uint32_t>(model.assignments.size()));
  for (const auto& doc : model.assignments) {
    put_u32(out, static_cast<std::uint32_t>(doc.size()));
    for (int z : doc) {
      out.push_back(static_cast<char>(z & 0xFF));
      out.push_back(static_cast<char>((z >> 8) & 0xFF));
    }
  }
  return out;
}

std::vector<std::vector<int>> load_assignments(std::string_view data) {
  if (data.size() < 4 || data.substr(0, 4) != "CPZ1")
    throw ParseError("unrecognized assignment data header", "");
  std::size_t pos = 4;
  const std::uint32_t docs = get_u32(data, pos);
  std::vector<std::vector<int>> out(docs);
  for (std::uint32_t d = 0; d < docs; ++d) {
    const std::uint32_t len = get_u32(data, pos);
    if (pos + 2ull * len > data.size())
      throw ParseError("truncated assignment data", "");
    out[d].resize(len);
    for (std::uint32_t i = 0; i < len; ++i) {
      const auto lo = static_cast<unsigned char>(data[pos++]);
      const auto hi = static_cast<unsigned char>(data[pos++]);
      out[d][i] = lo | (hi << 8);
    }
  }
  return out;
}

std::string topic_report_csv(const LdaModel& model, int top_n) {
  if (top_n < 1) throw ValidationError("word count must be at least 1");
  std::string out = "topic_id,rank,word,probability\n";
  char buf[32];
  for (int k = 0; k < static_cast<int>(model.phi.size()); ++k) {
    const auto words = top_words(model, k, top_n);
    for (std::size_t r = 0; r < words.size(); ++r) {
      std::snprintf(buf, sizeof(buf), "%.10f", words[r].second);
      csv::append_row(out, {std::to_string(k), std::to_string(r + 1),
                            words[r].first, buf});
    }
  }
  return out;
}

}  // namespace crisispulse::lda
