#include "attrbeam/attribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace attrbeam {

RankedImportance ranked_importance(const Attribution& e) {
  const std::size_t n = e.size();
  for (double v : e.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("attribution values must be finite");
    }
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Ascending by value; equal values keep index order, so the earlier
  // index receives the lower rank.
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return e.values[a] < e.values[b];
  });
  RankedImportance r;
  r.ranks.assign(n, 0);
  for (std::size_t pos = 0; pos < n; ++pos) {
    r.ranks[idx[pos]] = static_cast<int>(pos + 1);
  }
  return r;
}

std::vector<std::size_t> importance_order(const RankedImportance& r) {
  const std::size_t n = r.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int rank = r.ranks[i];
    if (rank < 1 || static_cast<std::size_t>(rank) > n) {
      throw std::invalid_argument("ranks must lie in 1..L");
    }
    order[n - static_cast<std::size_t>(rank)] = i;
  }
  return order;
}

bool is_rank_permutation(const std::vector<int>& ranks) {
  const std::size_t n = ranks.size();
  std::vector<bool> seen(n, false);
  for (int rank : ranks) {
    if (rank < 1 || static_cast<std::size_t>(rank) > n) {
      return false;
    }
    if (seen[static_cast<std::size_t>(rank) - 1]) {
      return false;
    }
    seen[static_cast<std::size_t>(rank) - 1] = true;
  }
  return true;
}

}  // namespace attrbeam
