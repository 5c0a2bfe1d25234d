#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "attrbeam/instance.hpp"

namespace attrbeam {

double logistic(double z);

/// Black-box scoring capability. For the built-in binary predictors,
/// score() is the probability of the positive class. Metrics and
/// explainers evaluate class_probability() for the class the predictor
/// assigns to the full input, so explanations always target the model's
/// own decision.
///
/// score() must be deterministic: the same instance always yields the
/// same value, and implementations must tolerate concurrent read-only
/// calls.
class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual double score(const Instance& x) const = 0;

  /// Most likely class; binary default thresholds score() at 0.5.
  virtual int classify(const Instance& x) const;

  /// Probability of `label`; binary default returns score() for label 1
  /// and its complement for label 0.
  virtual double class_probability(const Instance& x, int label) const;
};

/// Extension for predictors that expose a feature-embedding space and the
/// gradient of the positive-class logit in that space. The gradient-based
/// explainers require this capability.
class DifferentiablePredictor : public Predictor {
 public:
  /// One row per feature, each of length embedding_dim().
  using Embeddings = std::vector<std::vector<double>>;

  virtual std::size_t embedding_dim() const = 0;
  virtual Embeddings embed(const Instance& x) const = 0;

  /// Positive-class logit evaluated at an arbitrary embedding point.
  virtual double logit_at(const Embeddings& rows) const = 0;

  /// Gradient of logit_at with respect to each embedding row.
  virtual Embeddings logit_gradient_at(const Embeddings& rows) const = 0;

  double logit(const Instance& x) const { return logit_at(embed(x)); }
  Embeddings embed_gradient(const Instance& x) const {
    return logit_gradient_at(embed(x));
  }
};

/// Bag-of-features linear model: score(x) = logistic(bias + sum of
/// per-feature weights). Unknown features weigh 0, so the empty instance
/// scores logistic(bias).
class LexiconPredictor final : public Predictor {
 public:
  explicit LexiconPredictor(std::unordered_map<std::string, double> weights,
                            double bias = 0.0);

  double score(const Instance& x) const override;

  double bias() const { return bias_; }
  const std::unordered_map<std::string, double>& weights() const {
    return weights_;
  }

 private:
  std::unordered_map<std::string, double> weights_;
  double bias_;
};

/// Differentiable linear model over summed feature embeddings:
/// logit = w . sum_l embed(x_l) + b, score = logistic(logit).
/// Unknown features embed to the zero vector.
class LinearEmbedPredictor final : public DifferentiablePredictor {
 public:
  LinearEmbedPredictor(
      std::unordered_map<std::string, std::vector<double>> table,
      std::vector<double> weight, double bias = 0.0);

  double score(const Instance& x) const override;

  std::size_t embedding_dim() const override { return weight_.size(); }
  Embeddings embed(const Instance& x) const override;
  double logit_at(const Embeddings& rows) const override;
  Embeddings logit_gradient_at(const Embeddings& rows) const override;

  double bias() const { return bias_; }
  const std::vector<double>& weight() const { return weight_; }

 private:
  std::unordered_map<std::string, std::vector<double>> table_;
  std::vector<double> weight_;
  double bias_;
};

}  // namespace attrbeam
