#pragma once

#include <cstdint>
#include <list>
#include <unordered_map>
#include <utility>

#include "attrbeam/instance.hpp"
#include "attrbeam/predictor.hpp"

namespace attrbeam {

/// Memoized evaluation of the target-class probability on feature subsets
/// of one instance, keyed by the kept-feature bitmask. Beam search and the
/// exhaustive search re-evaluate heavily overlapping subsets, so results
/// are kept in a bounded least-recently-used cache. Capacity 0 disables
/// caching entirely; cached and uncached results are bit-identical.
///
/// Limited to instances of at most 64 features.
class SubsetEvaluator {
 public:
  SubsetEvaluator(const Instance& x, const Predictor& pred,
                  std::size_t cache_capacity);

  /// Probability of the full input's predicted class on the sub-instance
  /// holding exactly the features whose bits are set in `kept`.
  double score_mask(std::uint64_t kept);

  std::uint64_t full_mask() const { return full_mask_; }
  std::size_t feature_count() const { return x_.size(); }
  int target_label() const { return label_; }

  /// Number of underlying predictor invocations (cache misses).
  std::uint64_t model_calls() const { return calls_; }

 private:
  using Entry = std::pair<std::uint64_t, double>;

  const Instance& x_;
  const Predictor& pred_;
  int label_;
  std::uint64_t full_mask_;
  std::size_t capacity_;
  std::uint64_t calls_ = 0;
  std::list<Entry> lru_;  // front = most recently used
  std::unordered_map<std::uint64_t, std::list<Entry>::iterator> index_;
};

}  // namespace attrbeam
