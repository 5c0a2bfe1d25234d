#pragma once

#include <optional>
#include <string>
#include <vector>

namespace attrbeam {

enum class InstanceKind { text, tabular };

/// One removable unit of an input: a token for text, a named field for
/// tabular data. Text features are removed by literal deletion; tabular
/// features are removed by substituting their baseline value, so tabular
/// features must carry one.
struct Feature {
  std::string name;                     // field name, empty for text
  std::string value;                    // token text or field value
  std::optional<std::string> baseline;  // substitute used when removed (tabular)

  static Feature token(std::string value);
  static Feature field(std::string name, std::string value, std::string baseline);

  /// Identity seen by lexicon-style predictors: the token itself for text,
  /// "name=value" for tabular fields.
  std::string key() const;

  bool operator==(const Feature&) const = default;
};

/// An ordered, index-addressable sequence of features. Instances built via
/// the public constructors are never empty; only reduction operations
/// produce empty instances (predictors must accept those).
class Instance {
 public:
  /// Throws std::invalid_argument if `features` is empty or a tabular
  /// feature is missing its baseline.
  Instance(std::vector<Feature> features, InstanceKind kind);

  static Instance text(const std::vector<std::string>& tokens);

  /// Unchecked construction used by reduction operations; may be empty.
  static Instance reduced(std::vector<Feature> features, InstanceKind kind);

  std::size_t size() const { return features_.size(); }
  bool empty() const { return features_.empty(); }
  const Feature& operator[](std::size_t i) const { return features_[i]; }
  const std::vector<Feature>& features() const { return features_; }
  InstanceKind kind() const { return kind_; }

  bool operator==(const Instance&) const = default;

 private:
  struct unchecked_t {};
  Instance(unchecked_t, std::vector<Feature> features, InstanceKind kind);

  std::vector<Feature> features_;
  InstanceKind kind_;
};

/// Feature values in order; convenience for report code.
std::vector<std::string> feature_values(const Instance& x);

}  // namespace attrbeam
