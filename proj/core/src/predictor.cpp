#include "attrbeam/predictor.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace attrbeam {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

int Predictor::classify(const Instance& x) const {
  return score(x) >= 0.5 ? 1 : 0;
}

double Predictor::class_probability(const Instance& x, int label) const {
  const double p = score(x);
  return label == 1 ? p : 1.0 - p;
}

LexiconPredictor::LexiconPredictor(
    std::unordered_map<std::string, double> weights, double bias)
    : weights_(std::move(weights)), bias_(bias) {}

double LexiconPredictor::score(const Instance& x) const {
  double z = bias_;
  for (const Feature& f : x.features()) {
    auto it = weights_.find(f.key());
    if (it != weights_.end()) {
      z += it->second;
    }
  }
  return logistic(z);
}

LinearEmbedPredictor::LinearEmbedPredictor(
    std::unordered_map<std::string, std::vector<double>> table,
    std::vector<double> weight, double bias)
    : table_(std::move(table)), weight_(std::move(weight)), bias_(bias) {
  if (weight_.empty()) {
    throw std::invalid_argument("embedding weight vector must be non-empty");
  }
  for (const auto& [key, row] : table_) {
    if (row.size() != weight_.size()) {
      throw std::invalid_argument("embedding for '" + key +
                                  "' does not match the weight dimension");
    }
  }
}

double LinearEmbedPredictor::score(const Instance& x) const {
  return logistic(logit_at(embed(x)));
}

LinearEmbedPredictor::Embeddings LinearEmbedPredictor::embed(
    const Instance& x) const {
  Embeddings rows;
  rows.reserve(x.size());
  for (const Feature& f : x.features()) {
    auto it = table_.find(f.key());
    if (it != table_.end()) {
      rows.push_back(it->second);
    } else {
      rows.emplace_back(weight_.size(), 0.0);
    }
  }
  return rows;
}

double LinearEmbedPredictor::logit_at(const Embeddings& rows) const {
  double z = bias_;
  for (const std::vector<double>& row : rows) {
    for (std::size_t d = 0; d < weight_.size(); ++d) {
      z += weight_[d] * row[d];
    }
  }
  return z;
}

LinearEmbedPredictor::Embeddings LinearEmbedPredictor::logit_gradient_at(
    const Embeddings& rows) const {
  return Embeddings(rows.size(), weight_);
}

}  // namespace attrbeam
