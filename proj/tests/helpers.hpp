#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here recomputes expectations from first principles so the checks do not
// share code paths with the library implementation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "attrbeam/attribution.hpp"
#include "attrbeam/instance.hpp"
#include "attrbeam/metrics.hpp"
#include "attrbeam/predictor.hpp"
#include "attrbeam/reductions.hpp"
#include "attrbeam/rng.hpp"

namespace testutil {

using namespace attrbeam;

inline double logistic_ref(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Predictor returning a fixed probability regardless of input.
class ConstPredictor final : public Predictor {
 public:
  explicit ConstPredictor(double p) : p_(p) {}
  double score(const Instance&) const override { return p_; }

 private:
  double p_;
};

/// Predictor whose score grows with the number of present features.
class CountPredictor final : public Predictor {
 public:
  double score(const Instance& x) const override {
    return logistic_ref(0.5 * static_cast<double>(x.size()) - 1.0);
  }
};

/// Score affine in the presence of each feature (no squashing); used as an
/// exactly-linear target for the surrogate regression oracle.
class AdditivePredictor final : public Predictor {
 public:
  AdditivePredictor(std::unordered_map<std::string, double> deltas,
                    double base)
      : deltas_(std::move(deltas)), base_(base) {}
  double score(const Instance& x) const override {
    double v = base_;
    for (const Feature& f : x.features()) {
      auto it = deltas_.find(f.key());
      if (it != deltas_.end()) {
        v += it->second;
      }
    }
    return v;
  }

 private:
  std::unordered_map<std::string, double> deltas_;
  double base_;
};

inline const std::vector<std::string>& toy_vocabulary() {
  static const std::vector<std::string> vocab = {
      "great",  "superb",   "wonderful", "charming", "crisp",   "warm",
      "bright", "tender",   "lively",    "deft",     "bad",     "dull",
      "clumsy", "tired",    "flat",      "grim",     "shallow", "stale",
      "murky",  "rigid",    "film",      "movie",    "plot",    "scene",
      "actor",  "score",    "camera",    "dialog",   "pacing",  "ending",
      "the",    "a",        "an",        "it",       "is",      "was",
      "very",   "somewhat", "quite",     "rather"};
  return vocab;
}

struct LexiconCorpus {
  std::vector<Instance> instances;
  LexiconPredictor predictor;
};

/// Random instances over the toy vocabulary plus a random lexicon whose
/// weights are continuous. With unique_tokens each instance samples
/// without replacement, so marginal impacts are untied almost surely.
inline LexiconCorpus make_lexicon_corpus(std::size_t count, std::size_t l_min,
                                         std::size_t l_max, std::uint64_t seed,
                                         bool unique_tokens = false) {
  std::mt19937_64 gen(seed);
  const auto& vocab = toy_vocabulary();
  std::unordered_map<std::string, double> weights;
  for (const std::string& word : vocab) {
    weights[word] = rng::uniform_range(gen, -2.5, 2.5);
  }
  const double bias = rng::uniform_range(gen, -0.5, 0.5);
  std::vector<Instance> instances;
  instances.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t length =
        l_min + static_cast<std::size_t>(rng::below(gen, l_max - l_min + 1));
    std::vector<std::string> tokens;
    if (unique_tokens) {
      std::vector<std::string> pool = vocab;
      for (std::size_t j = 0; j < length && !pool.empty(); ++j) {
        const std::size_t pick = rng::below(gen, pool.size());
        tokens.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    } else {
      tokens.reserve(length);
      for (std::size_t j = 0; j < length; ++j) {
        tokens.push_back(vocab[rng::below(gen, vocab.size())]);
      }
    }
    instances.push_back(Instance::text(tokens));
  }
  return {std::move(instances), LexiconPredictor(std::move(weights), bias)};
}

/// Differentiable toy model with bigram interactions:
///   logit = b + sum_i w.E_i + coupling * sum_i (u.E_i)(u.E_{i+1}).
/// Unlike the additive linear-embed model, the contribution of a feature
/// depends on its neighbors, so no single ordering is trivially optimal.
class BigramEmbedPredictor final : public DifferentiablePredictor {
 public:
  BigramEmbedPredictor(
      std::unordered_map<std::string, std::vector<double>> table,
      std::vector<double> w, std::vector<double> u, double coupling,
      double bias)
      : table_(std::move(table)),
        w_(std::move(w)),
        u_(std::move(u)),
        coupling_(coupling),
        bias_(bias) {}

  double score(const Instance& x) const override {
    return logistic_ref(logit_at(embed(x)));
  }

  std::size_t embedding_dim() const override { return w_.size(); }

  Embeddings embed(const Instance& x) const override {
    Embeddings rows;
    rows.reserve(x.size());
    for (const Feature& f : x.features()) {
      auto it = table_.find(f.key());
      rows.push_back(it != table_.end() ? it->second
                                        : std::vector<double>(w_.size(), 0.0));
    }
    return rows;
  }

  double logit_at(const Embeddings& rows) const override {
    double z = bias_;
    std::vector<double> proj(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      proj[i] = dot(u_, rows[i]);
      z += dot(w_, rows[i]);
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      z += coupling_ * proj[i] * proj[i + 1];
    }
    return z;
  }

  Embeddings logit_gradient_at(const Embeddings& rows) const override {
    const std::size_t n = rows.size();
    std::vector<double> proj(n);
    for (std::size_t i = 0; i < n; ++i) {
      proj[i] = dot(u_, rows[i]);
    }
    Embeddings grads(n, w_);
    for (std::size_t i = 0; i < n; ++i) {
      double neighbor = 0.0;
      if (i > 0) {
        neighbor += proj[i - 1];
      }
      if (i + 1 < n) {
        neighbor += proj[i + 1];
      }
      for (std::size_t d = 0; d < w_.size(); ++d) {
        grads[i][d] += coupling_ * neighbor * u_[d];
      }
    }
    return grads;
  }

 private:
  static double dot(const std::vector<double>& a,
                    const std::vector<double>& b) {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      v += a[i] * b[i];
    }
    return v;
  }

  std::unordered_map<std::string, std::vector<double>> table_;
  std::vector<double> w_;
  std::vector<double> u_;
  double coupling_;
  double bias_;
};

struct EmbedCorpus {
  std::vector<Instance> instances;
  LinearEmbedPredictor predictor;
};

struct BigramCorpus {
  std::vector<Instance> instances;
  BigramEmbedPredictor predictor;
};

inline EmbedCorpus make_embed_corpus(std::size_t count, std::size_t l_min,
                                     std::size_t l_max, std::size_t dim,
                                     std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto& vocab = toy_vocabulary();
  std::unordered_map<std::string, std::vector<double>> table;
  for (const std::string& word : vocab) {
    std::vector<double> row(dim);
    for (double& v : row) {
      v = rng::uniform_range(gen, -1.0, 1.0);
    }
    table[word] = std::move(row);
  }
  std::vector<double> weight(dim);
  for (double& v : weight) {
    v = rng::uniform_range(gen, -1.2, 1.2);
  }
  const double bias = rng::uniform_range(gen, -0.3, 0.3);
  std::vector<Instance> instances;
  instances.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t length =
        l_min + static_cast<std::size_t>(rng::below(gen, l_max - l_min + 1));
    std::vector<std::string> tokens;
    tokens.reserve(length);
    for (std::size_t j = 0; j < length; ++j) {
      tokens.push_back(vocab[rng::below(gen, vocab.size())]);
    }
    instances.push_back(Instance::text(tokens));
  }
  return {std::move(instances),
          LinearEmbedPredictor(std::move(table), std::move(weight), bias)};
}

inline BigramCorpus make_bigram_corpus(std::size_t count, std::size_t l_min,
                                       std::size_t l_max, std::size_t dim,
                                       std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto& vocab = toy_vocabulary();
  std::unordered_map<std::string, std::vector<double>> table;
  for (const std::string& word : vocab) {
    std::vector<double> row(dim);
    for (double& v : row) {
      v = rng::uniform_range(gen, -1.0, 1.0);
    }
    table[word] = std::move(row);
  }
  std::vector<double> w(dim), u(dim);
  for (double& v : w) {
    v = rng::uniform_range(gen, -1.2, 1.2);
  }
  for (double& v : u) {
    v = rng::uniform_range(gen, -1.0, 1.0);
  }
  const double bias = rng::uniform_range(gen, -0.3, 0.3);
  std::vector<Instance> instances;
  instances.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t length =
        l_min + static_cast<std::size_t>(rng::below(gen, l_max - l_min + 1));
    std::vector<std::string> tokens;
    tokens.reserve(length);
    for (std::size_t j = 0; j < length; ++j) {
      tokens.push_back(vocab[rng::below(gen, vocab.size())]);
    }
    instances.push_back(Instance::text(tokens));
  }
  return {std::move(instances),
          BigramEmbedPredictor(std::move(table), std::move(w), std::move(u),
                               0.8, bias)};
}

/// Probability of the class the predictor assigns to `full`, evaluated on
/// a reduced instance; the scoring convention shared by all metrics.
inline double target_prob(const Predictor& pred, const Instance& full,
                          const Instance& reduced) {
  return pred.class_probability(reduced, pred.classify(full));
}

struct BruteBest {
  std::vector<int> ranks;
  double value = 0.0;
};

/// Exhaustive argmax of a metric over every ordering, computed through the
/// public metric functions only (independent of the solver's incremental
/// path). Metric selected by a callable (x, e) -> double.
template <typename MetricFn>
inline BruteBest brute_force_best(const Instance& x, MetricFn&& metric) {
  const std::size_t n = x.size();
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1);
  BruteBest best;
  best.value = -std::numeric_limits<double>::infinity();
  do {
    Attribution e;
    e.values.assign(ranks.begin(), ranks.end());
    const double v = metric(e);
    if (v > best.value) {
      best.value = v;
      best.ranks = ranks;
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return best;
}

/// Exact Shapley values by full permutation enumeration with direct
/// predictor calls.
inline std::vector<double> exact_shapley(const Instance& x,
                                         const Predictor& pred) {
  const std::size_t n = x.size();
  const int label = pred.classify(x);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> sums(n, 0.0);
  std::size_t count = 0;
  do {
    std::vector<bool> present(n, false);
    double prev = pred.class_probability(keep_subset(x, present), label);
    for (std::size_t i : perm) {
      present[i] = true;
      const double cur =
          pred.class_probability(keep_subset(x, present), label);
      sums[i] += cur - prev;
      prev = cur;
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double& v : sums) {
    v /= static_cast<double>(count);
  }
  return sums;
}

/// Weighted ridge regression via Gauss-Jordan elimination with partial
/// pivoting; the independent check for the surrogate explainer's solver.
/// Column 0 is the unpenalized intercept. Returns all m = n+1 coefficients.
inline std::vector<double> ridge_oracle(
    const std::vector<std::vector<double>>& rows,
    const std::vector<double>& targets, const std::vector<double>& weights,
    double ridge) {
  const std::size_t m = rows.front().size();
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        a[r][c] += weights[s] * rows[s][r] * rows[s][c];
      }
      a[r][m] += weights[s] * rows[s][r] * targets[s];
    }
  }
  for (std::size_t j = 1; j < m; ++j) {
    a[j][j] += ridge;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) {
        pivot = r;
      }
    }
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0) {
      throw std::runtime_error("ridge oracle: singular system");
    }
    const double d = a[col][col];
    for (std::size_t c = col; c <= m; ++c) {
      a[col][c] /= d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0.0) {
        continue;
      }
      const double factor = a[r][col];
      for (std::size_t c = col; c <= m; ++c) {
        a[r][c] -= factor * a[col][c];
      }
    }
  }
  std::vector<double> beta(m);
  for (std::size_t r = 0; r < m; ++r) {
    beta[r] = a[r][m];
  }
  return beta;
}

}  // namespace testutil
