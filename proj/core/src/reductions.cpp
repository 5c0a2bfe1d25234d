#include "attrbeam/reductions.hpp"

#include <stdexcept>
#include <string>

namespace attrbeam {

namespace {

void check_alignment(const Instance& x, const RankedImportance& ranks) {
  if (ranks.size() != x.size() || !is_rank_permutation(ranks.ranks)) {
    throw std::invalid_argument(
        "ranks must be a permutation of 1..L aligned with the instance");
  }
}

}  // namespace

Instance keep_subset(const Instance& x, const std::vector<bool>& present) {
  if (present.size() != x.size()) {
    throw std::invalid_argument("presence mask must match instance length");
  }
  std::vector<Feature> kept;
  kept.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (present[i]) {
      kept.push_back(x[i]);
    } else if (x.kind() == InstanceKind::tabular) {
      Feature f = x[i];
      if (!f.baseline.has_value()) {
        throw std::logic_error("tabular feature '" + f.name +
                               "' has no baseline to substitute");
      }
      f.value = *f.baseline;
      kept.push_back(std::move(f));
    }
  }
  return Instance::reduced(std::move(kept), x.kind());
}

Instance delete_top(const Instance& x, const RankedImportance& ranks,
                    std::size_t l) {
  check_alignment(x, ranks);
  const std::size_t n = x.size();
  if (l > n) {
    throw std::out_of_range("delete_top: l=" + std::to_string(l) +
                            " exceeds instance length " + std::to_string(n));
  }
  std::vector<bool> present(n);
  for (std::size_t i = 0; i < n; ++i) {
    present[i] = static_cast<std::size_t>(ranks.ranks[i]) <= n - l;
  }
  return keep_subset(x, present);
}

Instance keep_top(const Instance& x, const RankedImportance& ranks,
                  std::size_t l) {
  check_alignment(x, ranks);
  const std::size_t n = x.size();
  if (l > n) {
    throw std::out_of_range("keep_top: l=" + std::to_string(l) +
                            " exceeds instance length " + std::to_string(n));
  }
  std::vector<bool> present(n);
  for (std::size_t i = 0; i < n; ++i) {
    present[i] = static_cast<std::size_t>(ranks.ranks[i]) > n - l;
  }
  return keep_subset(x, present);
}

Instance marginal_delete(const Instance& x, const RankedImportance& ranks,
                         std::size_t l) {
  check_alignment(x, ranks);
  const std::size_t n = x.size();
  if (l < 1 || l > n) {
    throw std::out_of_range("marginal_delete: l=" + std::to_string(l) +
                            " outside 1.." + std::to_string(n));
  }
  const std::size_t removed_rank = n - l + 1;
  std::vector<bool> present(n);
  for (std::size_t i = 0; i < n; ++i) {
    present[i] = static_cast<std::size_t>(ranks.ranks[i]) != removed_rank;
  }
  return keep_subset(x, present);
}

}  // namespace attrbeam
