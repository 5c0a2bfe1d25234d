#include "attrbeam/instance.hpp"

#include <stdexcept>
#include <utility>

namespace attrbeam {

Feature Feature::token(std::string value) {
  return Feature{"", std::move(value), std::nullopt};
}

Feature Feature::field(std::string name, std::string value,
                       std::string baseline) {
  return Feature{std::move(name), std::move(value), std::move(baseline)};
}

std::string Feature::key() const {
  if (name.empty()) {
    return value;
  }
  return name + "=" + value;
}

Instance::Instance(std::vector<Feature> features, InstanceKind kind)
    : features_(std::move(features)), kind_(kind) {
  if (features_.empty()) {
    throw std::invalid_argument("instance must hold at least one feature");
  }
  if (kind_ == InstanceKind::tabular) {
    for (const Feature& f : features_) {
      if (!f.baseline.has_value()) {
        throw std::invalid_argument("tabular feature '" + f.name +
                                    "' is missing a baseline value");
      }
    }
  }
}

Instance::Instance(unchecked_t, std::vector<Feature> features,
                   InstanceKind kind)
    : features_(std::move(features)), kind_(kind) {}

Instance Instance::text(const std::vector<std::string>& tokens) {
  std::vector<Feature> features;
  features.reserve(tokens.size());
  for (const std::string& t : tokens) {
    features.push_back(Feature::token(t));
  }
  return Instance(std::move(features), InstanceKind::text);
}

Instance Instance::reduced(std::vector<Feature> features, InstanceKind kind) {
  return Instance(unchecked_t{}, std::move(features), kind);
}

std::vector<std::string> feature_values(const Instance& x) {
  std::vector<std::string> out;
  out.reserve(x.size());
  for (const Feature& f : x.features()) {
    out.push_back(f.value);
  }
  return out;
}

}  // namespace attrbeam
