#pragma once

#include <cstddef>
#include <vector>

#include "attrbeam/attribution.hpp"
#include "attrbeam/instance.hpp"

namespace attrbeam {

/// Instance with only the features marked true in `present`, preserving
/// order. Text features are deleted outright; tabular features are
/// replaced by their baseline value (arity is preserved).
Instance keep_subset(const Instance& x, const std::vector<bool>& present);

/// Instance with the l most important features removed (ranks L-l+1..L).
/// l=0 is the identity, l=L yields the empty instance. Throws
/// std::out_of_range unless 0 <= l <= L.
Instance delete_top(const Instance& x, const RankedImportance& ranks,
                    std::size_t l);

/// Instance retaining only the l most important features in original
/// order. l=L is the identity, l=0 yields the empty instance.
Instance keep_top(const Instance& x, const RankedImportance& ranks,
                  std::size_t l);

/// Instance with exactly the l-th most important feature removed (the one
/// of rank L-l+1), all others intact. Throws std::out_of_range unless
/// 1 <= l <= L.
Instance marginal_delete(const Instance& x, const RankedImportance& ranks,
                         std::size_t l);

}  // namespace attrbeam
