#include "attrbeam/explainers.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "attrbeam/reductions.hpp"
#include "attrbeam/rng.hpp"

namespace attrbeam {

namespace {

const DifferentiablePredictor& require_gradients(const Predictor& pred) {
  const auto* dp = dynamic_cast<const DifferentiablePredictor*>(&pred);
  if (dp == nullptr) {
    throw capability_error("predictor does not expose embedding gradients");
  }
  return *dp;
}

double target_sign(const Predictor& pred, const Instance& x) {
  return pred.classify(x) == 1 ? 1.0 : -1.0;
}

// Solves the SPD system A b = rhs in place via Cholesky; returns false on a
// non-positive pivot. A is row-major n x n.
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b,
                    std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) {
      diag -= a[j * n + k] * a[j * n + k];
    }
    if (!(diag > 0.0)) {
      return false;
    }
    a[j * n + j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) {
        v -= a[i * n + k] * a[j * n + k];
      }
      a[i * n + j] = v / a[j * n + j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {  // forward: L y = rhs
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) {
      v -= a[i * n + k] * b[k];
    }
    b[i] = v / a[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {  // backward: L^T x = y
    double v = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) {
      v -= a[k * n + ii] * b[k];
    }
    b[ii] = v / a[ii * n + ii];
  }
  return true;
}

struct MaskSample {
  std::vector<bool> present;
  std::size_t removed = 0;
};

}  // namespace

Attribution occlusion(const Instance& x, const Predictor& pred) {
  const std::size_t n = x.size();
  const int label = pred.classify(x);
  const double fx = pred.class_probability(x, label);
  Attribution e;
  e.values.resize(n);
  std::vector<bool> present(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    present[i] = false;
    e.values[i] = fx - pred.class_probability(keep_subset(x, present), label);
    present[i] = true;
  }
  return e;
}

Attribution vanilla_grad(const Instance& x, const Predictor& pred) {
  const DifferentiablePredictor& dp = require_gradients(pred);
  const auto grads = dp.embed_gradient(x);
  Attribution e;
  e.values.reserve(grads.size());
  for (const std::vector<double>& g : grads) {
    double sq = 0.0;
    for (double v : g) {
      sq += v * v;
    }
    e.values.push_back(std::sqrt(sq));
  }
  return e;
}

Attribution integrated_gradients(const Instance& x, const Predictor& pred,
                                 std::size_t steps) {
  if (steps == 0) {
    throw std::invalid_argument("integrated_gradients: steps must be >= 1");
  }
  const DifferentiablePredictor& dp = require_gradients(pred);
  const auto full = dp.embed(x);
  const std::size_t n = full.size();
  const std::size_t dim = dp.embedding_dim();
  const double sign = target_sign(pred, x);

  std::vector<std::vector<double>> mean_grad(n, std::vector<double>(dim, 0.0));
  DifferentiablePredictor::Embeddings point = full;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double alpha =
        static_cast<double>(k) / static_cast<double>(steps);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        point[i][d] = alpha * full[i][d];
      }
    }
    const auto grad = dp.logit_gradient_at(point);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        mean_grad[i][d] += grad[i][d];
      }
    }
  }

  Attribution e;
  e.values.resize(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double dot = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      dot += full[i][d] * mean_grad[i][d] / static_cast<double>(steps);
    }
    e.values[i] = sign * dot;
  }
  return e;
}

Attribution lime(const Instance& x, const Predictor& pred,
                 const ExplainerConfig& config) {
  const std::size_t n = x.size();
  if (config.lime_samples == 0) {
    throw std::invalid_argument("lime: need at least one sample");
  }
  const int label = pred.classify(x);
  const double width =
      config.lime_kernel_width.value_or(0.25 * std::sqrt(double(n)));
  if (!(width > 0.0)) {
    throw std::invalid_argument("lime: kernel width must be positive");
  }

  std::vector<MaskSample> samples;
  const bool exhaustive = n <= 10 && (std::size_t{1} << n) <= 1024;
  if (exhaustive) {
    const std::size_t total = std::size_t{1} << n;
    samples.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
      MaskSample s;
      s.present.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        s.present[i] = (mask >> i) & 1u;
        if (!s.present[i]) {
          ++s.removed;
        }
      }
      samples.push_back(std::move(s));
    }
  } else {
    std::mt19937_64 gen(config.seed);
    samples.reserve(config.lime_samples);
    for (std::size_t k = 0; k < config.lime_samples; ++k) {
      MaskSample s;
      s.present.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        s.present[i] = rng::uniform_unit(gen) < 0.5;
        if (!s.present[i]) {
          ++s.removed;
        }
      }
      samples.push_back(std::move(s));
    }
  }

  // Weighted ridge with an unpenalized intercept: column 0 is the
  // intercept, columns 1..n the presence indicators.
  const std::size_t m = n + 1;
  std::vector<double> gram(m * m, 0.0), rhs(m, 0.0), phi(m, 0.0);
  for (const MaskSample& s : samples) {
    const double y = pred.class_probability(keep_subset(x, s.present), label);
    const double frac =
        static_cast<double>(s.removed) / static_cast<double>(n);
    const double w = std::exp(-(frac * frac) / (width * width));
    phi[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      phi[i + 1] = s.present[i] ? 1.0 : 0.0;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (phi[r] == 0.0) {
        continue;
      }
      rhs[r] += w * phi[r] * y;
      for (std::size_t c = 0; c <= r; ++c) {
        gram[r * m + c] += w * phi[r] * phi[c];
      }
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = r + 1; c < m; ++c) {
      gram[r * m + c] = gram[c * m + r];
    }
  }

  double ridge = config.lime_ridge;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<double> a = gram;
    std::vector<double> b = rhs;
    for (std::size_t j = 1; j < m; ++j) {
      a[j * m + j] += ridge;
    }
    if (cholesky_solve(a, b, m)) {
      Attribution e;
      e.values.assign(b.begin() + 1, b.end());
      return e;
    }
    ridge *= 10.0;
  }
  throw std::runtime_error("lime: weighted system is singular");
}

Attribution shap_sampling(const Instance& x, const Predictor& pred,
                          const ExplainerConfig& config) {
  const std::size_t n = x.size();
  if (config.shap_permutations == 0) {
    throw std::invalid_argument("shap: need at least one permutation");
  }
  const int label = pred.classify(x);

  // Subset scores repeat across permutations; memoize by bitmask while the
  // instance fits in one.
  std::unordered_map<std::uint64_t, double> memo;
  const bool use_memo = n <= 64;
  std::vector<bool> present(n, false);
  auto subset_score = [&](std::uint64_t mask) {
    if (use_memo) {
      auto it = memo.find(mask);
      if (it != memo.end()) {
        return it->second;
      }
    }
    const double v = pred.class_probability(keep_subset(x, present), label);
    if (use_memo) {
      memo.emplace(mask, v);
    }
    return v;
  };

  std::mt19937_64 gen(config.seed);
  std::vector<std::size_t> perm(n);
  std::vector<double> sums(n, 0.0);
  for (std::size_t p = 0; p < config.shap_permutations; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      perm[i] = i;
    }
    for (std::size_t i = n; i > 1; --i) {  // Fisher-Yates
      const std::size_t j = static_cast<std::size_t>(rng::below(gen, i));
      std::swap(perm[i - 1], perm[j]);
    }
    std::fill(present.begin(), present.end(), false);
    std::uint64_t mask = 0;
    double prev = subset_score(0);
    for (std::size_t i : perm) {
      present[i] = true;
      if (use_memo) {
        mask |= (std::uint64_t{1} << i);
      }
      const double cur = subset_score(mask);
      sums[i] += cur - prev;
      prev = cur;
    }
  }

  Attribution e;
  e.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.values[i] = sums[i] / static_cast<double>(config.shap_permutations);
  }
  return e;
}

Attribution random_explainer(const Instance& x, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Attribution e;
  e.values.resize(x.size());
  for (double& v : e.values) {
    v = rng::uniform_range(gen, -1.0, 1.0);
  }
  return e;
}

}  // namespace attrbeam
