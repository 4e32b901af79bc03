#include "crisispulse/lda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "crisispulse/csv.hpp"
#include "crisispulse/errors.hpp"
#include "crisispulse/rng.hpp"

#include "doctest.h"

using namespace crisispulse;

namespace {

using Docs = std::vector<std::vector<std::string>>;

// Deterministic corpus of 200 docs over a 40-word pool.
Docs generated_docs() {
  std::vector<std::string> pool;
  for (int i = 0; i < 40; ++i) pool.push_back("w" + std::to_string(i));
  Rng rng(1234);
  Docs docs(200);
  for (auto& d : docs) {
    const int len = 3 + static_cast<int>(rng.below(12));
    for (int i = 0; i < len; ++i) {
      // Skewed draw: low ids are much more common.
      const auto a = rng.below(40);
      const auto b = rng.below(40);
      d.push_back(pool[std::min(a, b)]);
    }
  }
  return docs;
}

// Three topics over disjoint five-word vocabularies.
Docs planted_docs(int docs_per_topic, int doc_len, std::uint64_t seed) {
  Docs docs;
  Rng rng(seed);
  for (int t = 0; t < 3; ++t) {
    for (int d = 0; d < docs_per_topic; ++d) {
      std::vector<std::string> doc;
      for (int i = 0; i < doc_len; ++i) {
        doc.push_back("t" + std::to_string(t) + "w" +
                      std::to_string(rng.below(5)));
      }
      docs.push_back(std::move(doc));
    }
  }
  return docs;
}

}  // namespace

TEST_CASE("vocabulary build: thresholds and ordering") {
  const Docs docs = {{"a", "b"}, {"a"}};
  const auto v1 = lda::build_vocabulary(docs, 1, 1.0);
  CHECK(v1.words == std::vector<std::string>{"a", "b"});
  CHECK(v1.doc_freq == std::vector<int>{2, 1});
  CHECK(v1.id_of("a") == 0);
  CHECK(v1.id_of("b") == 1);
  CHECK(v1.id_of("zzz") == -1);

  const auto v2 = lda::build_vocabulary(docs, 2, 1.0);
  CHECK(v2.words == std::vector<std::string>{"a"});

  // max_df_ratio prunes the ubiquitous word instead.
  const auto v3 = lda::build_vocabulary(docs, 1, 0.5);
  CHECK(v3.words == std::vector<std::string>{"b"});

  CHECK_THROWS_AS(lda::build_vocabulary(docs, 3, 1.0), ValidationError);
}

TEST_CASE("vocabulary equals a brute-force document-frequency filter") {
  const auto docs = generated_docs();
  const auto vocab = lda::build_vocabulary(docs, 3, 0.5);

  // Independent recount.
  std::map<std::string, int> df;
  for (const auto& d : docs) {
    const std::set<std::string> uniq(d.begin(), d.end());
    for (const auto& w : uniq) ++df[w];
  }
  std::vector<std::pair<int, std::string>> expect;
  const double cap = 0.5 * static_cast<double>(docs.size());
  for (const auto& [w, f] : df) {
    if (f >= 3 && f <= cap) expect.push_back({-f, w});
  }
  std::sort(expect.begin(), expect.end());

  REQUIRE(vocab.size() == static_cast<int>(expect.size()));
  for (int i = 0; i < vocab.size(); ++i) {
    CHECK(vocab.words[i] == expect[i].second);
    CHECK(vocab.doc_freq[i] == -expect[i].first);
  }
  // ids are dense and consistent
  for (int i = 0; i < vocab.size(); ++i) CHECK(vocab.id_of(vocab.words[i]) == i);
}

TEST_CASE("gibbs conditional: frozen hand values") {
  // K=2, alpha=1, beta=1, V=3, n_d=[2,0], n_.w=[1,0], n_.=[4,1]
  const std::vector<int> doc_topic = {2, 0};
  const std::vector<std::vector<int>> topic_word = {{1, 2, 1}, {0, 1, 0}};
  const std::vector<int> topic_total = {4, 1};
  const auto p = lda::gibbs_conditional(doc_topic, topic_word, topic_total, 0,
                                        1.0, 1.0, 3);
  REQUIRE(p.size() == 2);
  // proportional to [ (2+1)(1+1)/(4+3), (0+1)(0+1)/(1+3) ] = [6/7, 1/4]
  CHECK(p[0] == doctest::Approx(24.0 / 31).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(7.0 / 31).epsilon(1e-12));
}

TEST_CASE("gibbs conditional: symmetry and K=1") {
  const std::vector<int> doc_topic = {3, 3};
  const std::vector<std::vector<int>> topic_word = {{2, 1}, {2, 1}};
  const std::vector<int> topic_total = {3, 3};
  const auto p = lda::gibbs_conditional(doc_topic, topic_word, topic_total, 0,
                                        0.5, 0.1, 2);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));

  const std::vector<int> one_doc = {5};
  const std::vector<std::vector<int>> one_word = {{5}};
  const std::vector<int> one_total = {5};
  const auto q = lda::gibbs_conditional(one_doc, one_word, one_total, 0, 0.1,
                                        0.1, 1);
  REQUIRE(q.size() == 1);
  CHECK(q[0] == 1.0);
}

TEST_CASE("gibbs conditional sums to one on random count states") {
  Rng rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    const int K = 1 + static_cast<int>(rng.below(6));
    const int V = 2 + static_cast<int>(rng.below(9));
    std::vector<int> doc_topic(K);
    std::vector<std::vector<int>> topic_word(K, std::vector<int>(V));
    std::vector<int> topic_total(K);
    for (int k = 0; k < K; ++k) {
      doc_topic[k] = static_cast<int>(rng.below(10));
      for (int w = 0; w < V; ++w) {
        topic_word[k][w] = static_cast<int>(rng.below(8));
        topic_total[k] += topic_word[k][w];
      }
    }
    const int w = static_cast<int>(rng.below(static_cast<std::uint32_t>(V)));
    const auto p = lda::gibbs_conditional(doc_topic, topic_word, topic_total, w,
                                          0.1 + rng.unit(), 0.01 + rng.unit(), V);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    for (double x : p) CHECK(x >= 0.0);
  }
}

TEST_CASE("lda config validation and defaults") {
  lda::LdaConfig cfg;
  CHECK(cfg.topics == 15);
  CHECK(cfg.effective_alpha() == doctest::Approx(50.0 / 15).epsilon(1e-12));
  CHECK(cfg.beta == 0.01);
  CHECK(cfg.iterations == 1000);
  cfg.topics = 10;
  CHECK(cfg.effective_alpha() == 5.0);
  cfg.alpha = 0.3;
  CHECK(cfg.effective_alpha() == 0.3);

  lda::LdaConfig bad = cfg;
  bad.topics = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.beta = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.iterations = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("fit on identical one-word docs collapses to a point") {
  const Docs docs(20, {"tek"});
  const auto vocab = lda::build_vocabulary(docs, 1, 1.0);
  lda::LdaConfig cfg;
  cfg.topics = 1;
  cfg.iterations = 5;
  cfg.seed = 9;
  const auto model = lda::fit_lda(docs, vocab, cfg);
  REQUIRE(model.phi.size() == 1);
  CHECK(model.phi[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(model.theta.size() == 20);
  for (const auto& row : model.theta) {
    REQUIRE(row.size() == 1);
    CHECK(row[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto perp = lda::perplexity(model, docs);
  CHECK(perp.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(perp.skipped_docs == 0);
}

TEST_CASE("fit recovers planted disjoint topics") {
  const auto docs = planted_docs(20, 20, 77);
  const auto vocab = lda::build_vocabulary(docs, 1, 1.0);
  lda::LdaConfig cfg;
  cfg.topics = 3;
  cfg.iterations = 150;
  cfg.seed = 4;
  cfg.check_counts_every_sweep = true;  // count conservation each sweep
  cfg.record_perplexity_trace = true;
  const auto model = lda::fit_lda(docs, vocab, cfg);
  lda::check_count_invariants(model);

  // Each planted group should own one fitted topic's top words.
  std::set<int> claimed;
  for (int k = 0; k < 3; ++k) {
    const auto top = lda::top_words(model, k, 5);
    std::map<char, int> votes;
    for (const auto& [w, p] : top) ++votes[w[1]];  // 't0'..'t2' prefix
    const auto best =
        std::max_element(votes.begin(), votes.end(),
                         [](auto& a, auto& b) { return a.second < b.second; });
    CHECK(best->second >= 4);  // at least 4 of 5 from one planted vocabulary
    claimed.insert(best->first - '0');
  }
  CHECK(claimed.size() == 3);  // a distinct planted topic per fitted topic

  // Gibbs should not end worse than it started.
  REQUIRE(model.perplexity_trace.size() == 150);
  const auto mean = [](auto first, auto last) {
    return std::accumulate(first, last, 0.0) / std::distance(first, last);
  };
  const double early = mean(model.perplexity_trace.begin(),
                            model.perplexity_trace.begin() + 10);
  const double late = mean(model.perplexity_trace.end() - 10,
                           model.perplexity_trace.end());
  CHECK(late <= early);
  for (double v : model.perplexity_trace) {
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
}

TEST_CASE("same seed, same model; different seed, different assignments") {
  const auto docs = planted_docs(10, 12, 3);
  const auto vocab = lda::build_vocabulary(docs, 1, 1.0);
  lda::LdaConfig cfg;
  cfg.topics = 3;
  cfg.iterations = 40;
  cfg.seed = 2020;
  const auto a = lda::fit_lda(docs, vocab, cfg);
  const auto b = lda::fit_lda(docs, vocab, cfg);
  CHECK(a.assignments == b.assignments);
  CHECK(a.phi == b.phi);
  CHECK(a.theta == b.theta);

  cfg.seed = 2021;
  const auto c = lda::fit_lda(docs, vocab, cfg);
  CHECK(a.assignments != c.assignments);
}

TEST_CASE("documents emptied by the vocabulary are skipped and reported") {
  Docs docs = {{"ortak", "ortak"}, {"nadir"}, {"ortak"}};
  const auto vocab = lda::build_vocabulary(docs, 2, 1.0);  // keeps only "ortak"
  CHECK(vocab.words == std::vector<std::string>{"ortak"});
  lda::LdaConfig cfg;
  cfg.topics = 2;
  cfg.iterations = 10;
  cfg.seed = 1;
  const auto model = lda::fit_lda(docs, vocab, cfg);
  CHECK(model.skipped_docs == std::vector<int>{1});
  REQUIRE(model.doc_index.size() == 2);
  CHECK(model.doc_index[0] == 0);
  CHECK(model.doc_index[1] == 2);
  CHECK(model.docs.size() == 2);
  CHECK(model.theta.size() == 2);
}

TEST_CASE("more topics than tokens only warns") {
  const Docs docs = {{"bir"}, {"iki"}};
  const auto vocab = lda::build_vocabulary(docs, 1, 1.0);
  lda::LdaConfig cfg;
  cfg.topics = 15;
  cfg.iterations = 3;
  cfg.seed = 5;
  const auto model = lda::fit_lda(docs, vocab, cfg);
  bool warned = false;
  for (const auto& w : model.warnings) {
    if (w.find("topic") != std::string::npos) warned = true;
  }
  CHECK(warned);
  lda::check_count_invariants(model);
}

TEST_CASE("count invariant checker notices corruption") {
  const auto docs = planted_docs(5, 8, 6);
  const auto vocab = lda::build_vocabulary(docs, 1, 1.0);
  lda::LdaConfig cfg;
  cfg.topics = 2;
  cfg.iterations = 5;
  cfg.seed = 8;
  auto model = lda::fit_lda(docs, vocab, cfg);
  lda::check_count_invariants(model);
  model.topic_total[0] += 1;
  CHECK_THROWS_AS(lda::check_count_invariants(model), ValidationError);
}

TEST_CASE("top words: ties lexicographic, n clamped, range checked") {
  const Docs docs = {{"a"}, {"b"}, {"c"}};
  const auto vocab = lda::build_vocabulary(docs, 1, 1.0);
  lda::LdaConfig cfg;
  cfg.topics = 1;
  cfg.iterations = 2;
  cfg.seed = 3;
  const auto model = lda::fit_lda(docs, vocab, cfg);
  const auto top2 = lda::top_words(model, 0, 2);
  REQUIRE(top2.size() == 2);
  CHECK(top2[0].first == "a");
  CHECK(top2[1].first == "b");
  CHECK(top2[0].second == doctest::Approx(1.0 / 3).epsilon(1e-12));

  CHECK(lda::top_words(model, 0, 99).size() == 3);
  CHECK_THROWS_AS(lda::top_words(model, 1, 2), ValidationError);
  CHECK_THROWS_AS(lda::top_words(model, -1, 2), ValidationError);
}

TEST_CASE("uniform model scores perplexity V") {
  lda::LdaModel model;
  model.vocab.words = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i) {
    model.vocab.index[model.vocab.words[i]] = i;
    model.vocab.doc_freq.push_back(1);
  }
  model.config.topics = 2;
  model.doc_index = {0};
  model.theta = {{0.5, 0.5}};
  model.phi = {{0.25, 0.25, 0.25, 0.25}, {0.25, 0.25, 0.25, 0.25}};
  const Docs docs = {{"a", "b", "c", "d", "a"}};
  const auto result = lda::perplexity(model, docs);
  CHECK(result.value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("perplexity matches an independent summation") {
  const auto docs = planted_docs(12, 10, 42);
  const auto vocab = lda::build_vocabulary(docs, 1, 1.0);
  lda::LdaConfig cfg;
  cfg.topics = 3;
  cfg.iterations = 30;
  cfg.seed = 11;
  const auto model = lda::fit_lda(docs, vocab, cfg);
  const auto result = lda::perplexity(model, docs);

  // Independent recount, accumulated per document in long double.
  long double total = 0.0L;
  std::size_t tokens = 0;
  for (std::size_t r = 0; r < model.doc_index.size(); ++r) {
    const auto& doc = docs[model.doc_index[r]];
    long double doc_sum = 0.0L;
    for (const auto& tok : doc) {
      const int w = vocab.id_of(tok);
      REQUIRE(w >= 0);
      long double p = 0.0L;
      for (int k = 0; k < 3; ++k) p += model.theta[r][k] * model.phi[k][w];
      doc_sum += std::log(static_cast<double>(p));
      ++tokens;
    }
    total += doc_sum;
  }
  const double expect =
      std::exp(static_cast<double>(-total / static_cast<long double>(tokens)));
  CHECK(result.value == doctest::Approx(expect).epsilon(1e-9));
  CHECK(result.skipped_docs == 0);

  // A doc with no in-vocabulary words is skipped, not scored.
  Docs extended = docs;
  extended.push_back({"tanımsız"});
  const auto with_skip = lda::perplexity(model, extended);
  CHECK(with_skip.skipped_docs == 1);
  CHECK(with_skip.value == doctest::Approx(result.value).epsilon(1e-12));
}

TEST_CASE("model persistence round trips") {
  const auto docs = planted_docs(8, 8, 21);
  const auto vocab = lda::build_vocabulary(docs, 1, 1.0);
  lda::LdaConfig cfg;
  cfg.topics = 3;
  cfg.iterations = 12;
  cfg.seed = 31;
  const auto model = lda::fit_lda(docs, vocab, cfg);

  const auto loaded = lda::load_model(lda::save_model(model));
  CHECK(loaded.config.topics == 3);
  CHECK(loaded.config.beta == doctest::Approx(cfg.beta).epsilon(1e-12));
  CHECK(loaded.vocab.words == model.vocab.words);
  CHECK(loaded.vocab.doc_freq == model.vocab.doc_freq);
  REQUIRE(loaded.phi.size() == model.phi.size());
  for (std::size_t k = 0; k < model.phi.size(); ++k) {
    REQUIRE(loaded.phi[k].size() == model.phi[k].size());
    for (std::size_t w = 0; w < model.phi[k].size(); ++w) {
      // Serialized at 10 decimal places.
      CHECK(loaded.phi[k][w] == doctest::Approx(model.phi[k][w]).epsilon(1e-10));
    }
  }

  const auto z = lda::load_assignments(lda::save_assignments(model));
  CHECK(z == model.assignments);

  CHECK_THROWS_AS(lda::load_model("{}"), ValidationError);
  CHECK_THROWS_AS(lda::load_assignments("junk"), ValidationError);
}

TEST_CASE("topic report csv shape") {
  const auto docs = planted_docs(8, 8, 13);
  const auto vocab = lda::build_vocabulary(docs, 1, 1.0);
  lda::LdaConfig cfg;
  cfg.topics = 3;
  cfg.iterations = 10;
  cfg.seed = 17;
  const auto model = lda::fit_lda(docs, vocab, cfg);
  const auto rows = csv::parse(lda::topic_report_csv(model, 4));
  REQUIRE(rows.size() == 1 + 3 * 4);
  CHECK(rows[0].fields ==
        std::vector<std::string>{"topic_id", "rank", "word", "probability"});
  CHECK(rows[1].fields[0] == "0");
  CHECK(rows[1].fields[1] == "1");
  double prev = 2.0;
  for (int r = 1; r <= 4; ++r) {  // first topic's ranks decrease
    const double p = std::stod(rows[r].fields[3]);
    CHECK(p <= prev);
    prev = p;
  }
}
