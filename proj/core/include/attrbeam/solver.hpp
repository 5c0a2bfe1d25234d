#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "attrbeam/attribution.hpp"
#include "attrbeam/instance.hpp"
#include "attrbeam/predictor.hpp"
#include "attrbeam/subset_cache.hpp"

namespace attrbeam {

/// Metrics the search can optimize. comp and delta are maximized; suff is
/// minimized (the search maximizes its negation).
enum class MetricId { comp, suff, delta };

struct BeamConfig {
  std::size_t beam_size = 100;
  std::size_t cache_capacity = 1u << 20;
};

/// A prefix of an importance ordering: the top-l features, assigned ranks
/// L, L-1, ..., L-l+1 in assignment order, plus the accumulated sum of the
/// per-prefix metric terms.
struct PartialExplanation {
  std::uint64_t assigned_mask = 0;
  std::vector<std::uint32_t> order;  // order[j] was assigned rank L-j
  double partial_score = 0.0;

  std::size_t assigned_count() const { return order.size(); }

  /// feature index -> rank value, for a total of `length` features.
  std::map<std::size_t, int> assigned_ranks(std::size_t length) const;
};

/// Per-prefix term of the comp-suff difference for the assigned top-l set:
/// f(only top-l kept) - f(top-l removed). Summing the terms of a complete
/// ordering and dividing by (L+1) gives the comp-suff difference of that
/// ordering.
double partial_delta_term(const PartialExplanation& partial,
                          SubsetEvaluator& eval);

struct SolveResult {
  Attribution attribution;  // shifted values, in {1-k, ..., L-k}
  RankedImportance ranks;
  /// Value of the optimized metric for the returned ordering (comp, suff,
  /// or delta, matching the request).
  double objective = 0.0;
  std::uint64_t model_calls = 0;
};

/// Beam search over importance orderings, extending prefixes one rank at a
/// time (rank L first) and keeping the best `beam_size` prefixes by
/// partial score at every step. Ties keep generation order: parent beam
/// position first, then feature index. The single best complete ordering
/// is post-processed by shift(). Deterministic.
SolveResult solve_metric(const Instance& x, const Predictor& pred,
                         MetricId metric, const BeamConfig& config = {});

/// solve_metric for the comp-suff difference, the default objective.
SolveResult beam_search(const Instance& x, const Predictor& pred,
                        const BeamConfig& config = {});

/// Shift rank values by the integer k in {0..L} whose induced signs agree
/// with the occlusion signs on the most features, then return ranks - k.
/// A zero occlusion sign agrees with anything; a shifted value of zero
/// agrees with occlusion signs 0 and +. Ties pick the smallest k. The
/// shift never changes the induced ranking, so metric values are
/// unaffected.
Attribution shift(const RankedImportance& ranks, const Instance& x,
                  const Predictor& pred);

struct OracleResult {
  Attribution attribution;  // the argmax ordering's rank values
  double value = 0.0;       // the optimized metric at that ordering
};

/// Evaluates every one of the L! orderings and returns the argmax (ties:
/// lexicographically smallest rank vector). Throws std::out_of_range with
/// the configured cap when L exceeds it.
OracleResult exhaustive_search(const Instance& x, const Predictor& pred,
                               MetricId metric, std::size_t cap = 8);

/// exhaustive_search for the comp-suff difference.
OracleResult exhaustive_oracle(const Instance& x, const Predictor& pred,
                               std::size_t cap = 8);

namespace detail {
/// shift() against an existing evaluator, reusing its cache.
Attribution shift_with(const RankedImportance& ranks, SubsetEvaluator& eval);
}  // namespace detail

}  // namespace attrbeam
