#include "attrbeam/solver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "attrbeam/reductions.hpp"

namespace attrbeam {

SubsetEvaluator::SubsetEvaluator(const Instance& x, const Predictor& pred,
                                 std::size_t cache_capacity)
    : x_(x),
      pred_(pred),
      label_(pred.classify(x)),
      capacity_(cache_capacity) {
  const std::size_t n = x.size();
  if (n > 64) {
    throw std::invalid_argument(
        "subset evaluation is limited to 64 features, got " +
        std::to_string(n));
  }
  full_mask_ = n == 64 ? ~std::uint64_t{0}
                       : ((std::uint64_t{1} << n) - 1);
}

double SubsetEvaluator::score_mask(std::uint64_t kept) {
  if (capacity_ > 0) {
    auto it = index_.find(kept);
    if (it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
  }
  const std::size_t n = x_.size();
  std::vector<bool> present(n);
  for (std::size_t i = 0; i < n; ++i) {
    present[i] = ((kept >> i) & 1u) != 0;
  }
  const double value =
      pred_.class_probability(keep_subset(x_, present), label_);
  ++calls_;
  if (capacity_ > 0) {
    lru_.emplace_front(kept, value);
    index_.emplace(kept, lru_.begin());
    if (index_.size() > capacity_) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
  }
  return value;
}

std::map<std::size_t, int> PartialExplanation::assigned_ranks(
    std::size_t length) const {
  std::map<std::size_t, int> ranks;
  for (std::size_t j = 0; j < order.size(); ++j) {
    ranks[order[j]] = static_cast<int>(length - j);
  }
  return ranks;
}

namespace {

// Per-prefix term of the optimized metric for the kept set `mask`. The
// constant endpoint terms are kept in the sums so a completed ordering's
// score equals the (L+1)-scaled metric value.
double prefix_term(MetricId metric, SubsetEvaluator& eval, std::uint64_t mask,
                   double f_full) {
  const std::uint64_t complement = eval.full_mask() & ~mask;
  switch (metric) {
    case MetricId::comp:
      return f_full - eval.score_mask(complement);
    case MetricId::suff:
      return eval.score_mask(mask) - f_full;
    case MetricId::delta:
      return eval.score_mask(mask) - eval.score_mask(complement);
  }
  throw std::invalid_argument("unknown metric id");
}

// Raw accumulated score -> value of the requested metric.
double metric_value(MetricId metric, double raw_sum, std::size_t length) {
  const double scaled = raw_sum / static_cast<double>(length + 1);
  return metric == MetricId::suff ? -scaled : scaled;
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

double partial_delta_term(const PartialExplanation& partial,
                          SubsetEvaluator& eval) {
  const double f_full = eval.score_mask(eval.full_mask());
  return prefix_term(MetricId::delta, eval, partial.assigned_mask, f_full);
}

namespace detail {

Attribution shift_with(const RankedImportance& ranks, SubsetEvaluator& eval) {
  const std::size_t n = ranks.size();
  const double f_full = eval.score_mask(eval.full_mask());
  std::vector<int> occl_sign(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t without = eval.full_mask() & ~(std::uint64_t{1} << i);
    occl_sign[i] = sign_of(f_full - eval.score_mask(without));
  }

  std::size_t best_k = 0;
  int best_agree = -1;
  for (std::size_t k = 0; k <= n; ++k) {
    int agree = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int s = occl_sign[i];
      if (s == 0) {
        ++agree;  // zero marginal contribution agrees with anything
        continue;
      }
      const int shifted =
          sign_of(static_cast<double>(ranks.ranks[i]) - static_cast<double>(k));
      // A shifted value of exactly zero agrees with signs 0 and +.
      if (shifted > 0 && s > 0) {
        ++agree;
      } else if (shifted == 0 && s > 0) {
        ++agree;
      } else if (shifted < 0 && s < 0) {
        ++agree;
      }
    }
    if (agree > best_agree) {
      best_agree = agree;
      best_k = k;
    }
  }

  Attribution shifted;
  shifted.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    shifted.values[i] =
        static_cast<double>(ranks.ranks[i]) - static_cast<double>(best_k);
  }
  return shifted;
}

}  // namespace detail

Attribution shift(const RankedImportance& ranks, const Instance& x,
                  const Predictor& pred) {
  if (ranks.size() != x.size() || !is_rank_permutation(ranks.ranks)) {
    throw std::invalid_argument("shift: ranks must be a permutation of 1..L");
  }
  SubsetEvaluator eval(x, pred, std::size_t{1} << 12);
  return detail::shift_with(ranks, eval);
}

SolveResult solve_metric(const Instance& x, const Predictor& pred,
                         MetricId metric, const BeamConfig& config) {
  if (config.beam_size == 0) {
    throw std::invalid_argument("beam size must be >= 1");
  }
  const std::size_t n = x.size();
  SubsetEvaluator eval(x, pred, config.cache_capacity);
  const double f_full = eval.score_mask(eval.full_mask());

  std::vector<PartialExplanation> beams(1);
  beams[0].partial_score = prefix_term(metric, eval, 0, f_full);

  std::vector<PartialExplanation> candidates;
  for (std::size_t step = 1; step <= n; ++step) {
    candidates.clear();
    candidates.reserve(beams.size() * (n - step + 1));
    for (const PartialExplanation& parent : beams) {
      for (std::uint32_t idx = 0; idx < n; ++idx) {
        if ((parent.assigned_mask >> idx) & 1u) {
          continue;
        }
        PartialExplanation child = parent;
        child.assigned_mask |= (std::uint64_t{1} << idx);
        child.order.push_back(idx);
        child.partial_score +=
            prefix_term(metric, eval, child.assigned_mask, f_full);
        candidates.push_back(std::move(child));
      }
    }
    // Ties keep generation order: parent beam position, then feature index.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const PartialExplanation& a,
                        const PartialExplanation& b) {
                       return a.partial_score > b.partial_score;
                     });
    if (candidates.size() > config.beam_size) {
      candidates.resize(config.beam_size);
    }
    beams = candidates;
  }

  const PartialExplanation& best = beams.front();
  SolveResult result;
  result.ranks.ranks.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    result.ranks.ranks[best.order[j]] = static_cast<int>(n - j);
  }
  result.attribution = detail::shift_with(result.ranks, eval);
  result.objective = metric_value(metric, best.partial_score, n);
  result.model_calls = eval.model_calls();
  return result;
}

SolveResult beam_search(const Instance& x, const Predictor& pred,
                        const BeamConfig& config) {
  return solve_metric(x, pred, MetricId::delta, config);
}

OracleResult exhaustive_search(const Instance& x, const Predictor& pred,
                               MetricId metric, std::size_t cap) {
  const std::size_t n = x.size();
  if (n > cap) {
    throw std::out_of_range("exhaustive search refused: L=" +
                            std::to_string(n) + " exceeds the cap of " +
                            std::to_string(cap) + " features");
  }
  // Every subset can appear, so an unbounded cache covers all 2^L masks.
  SubsetEvaluator eval(x, pred, std::size_t{1} << (n + 1));
  const double f_full = eval.score_mask(eval.full_mask());
  const double base_term = prefix_term(metric, eval, 0, f_full);

  std::vector<int> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    ranks[i] = static_cast<int>(i + 1);
  }
  std::vector<std::size_t> index_of_rank(n + 1);

  double best_sum = -std::numeric_limits<double>::infinity();
  std::vector<int> best_ranks;
  do {
    for (std::size_t i = 0; i < n; ++i) {
      index_of_rank[static_cast<std::size_t>(ranks[i])] = i;
    }
    std::uint64_t mask = 0;
    double sum = base_term;
    for (std::size_t j = 0; j < n; ++j) {
      mask |= (std::uint64_t{1} << index_of_rank[n - j]);
      sum += prefix_term(metric, eval, mask, f_full);
    }
    // Strict improvement keeps the lexicographically smallest rank vector
    // among ties.
    if (sum > best_sum) {
      best_sum = sum;
      best_ranks = ranks;
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));

  OracleResult result;
  result.attribution.values.assign(best_ranks.begin(), best_ranks.end());
  result.value = metric_value(metric, best_sum, n);
  return result;
}

OracleResult exhaustive_oracle(const Instance& x, const Predictor& pred,
                               std::size_t cap) {
  return exhaustive_search(x, pred, MetricId::delta, cap);
}

}  // namespace attrbeam
