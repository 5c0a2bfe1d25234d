#pragma once

#include <cstddef>
#include <vector>

namespace attrbeam {

/// Per-feature contribution scores aligned with an instance. All entries
/// must be finite wherever an Attribution is consumed.
struct Attribution {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool operator==(const Attribution&) const = default;
};

/// A permutation of {1..L}; rank L marks the most important feature and
/// rank 1 the least important.
struct RankedImportance {
  std::vector<int> ranks;

  std::size_t size() const { return ranks.size(); }
  bool operator==(const RankedImportance&) const = default;
};

/// Rank of each feature by attribution value. Ties are broken by feature
/// index (the earlier index gets the lower rank) so the result is always a
/// strict permutation. Throws std::invalid_argument on non-finite entries.
RankedImportance ranked_importance(const Attribution& e);

/// Feature indices ordered most important first.
std::vector<std::size_t> importance_order(const RankedImportance& r);

/// True iff `ranks` is exactly a permutation of {1..L}.
bool is_rank_permutation(const std::vector<int>& ranks);

}  // namespace attrbeam
