#pragma once

#include <optional>
#include <span>
#include <vector>

#include "attrbeam/attribution.hpp"
#include "attrbeam/instance.hpp"
#include "attrbeam/predictor.hpp"

namespace attrbeam {

/// All faithfulness metrics for one (instance, attribution) pair.
/// rank_del and rank_ins are absent when the underlying correlation is
/// undefined (L < 2 or zero variance).
struct MetricReport {
  double comp = 0.0;
  double suff = 0.0;
  double delta = 0.0;  // always comp - suff
  int df_mit = 0;      // 0/1
  double df_frac = 1.0;
  std::optional<double> rank_del;
  std::optional<double> rank_ins;
};

/// Mean prediction drop as top-ranked features are successively deleted:
/// (1/(L+1)) * sum_{l=0..L} [f(x) - f(x with top-l removed)]. Higher is
/// better.
double comprehensiveness(const Instance& x, const Attribution& e,
                         const Predictor& pred);

/// Mean residual gap as top-ranked features are successively kept:
/// (1/(L+1)) * sum_{l=0..L} [f(x) - f(x with only top-l kept)]. Lower is
/// better.
double sufficiency(const Instance& x, const Attribution& e,
                   const Predictor& pred);

/// comprehensiveness - sufficiency; the scalar objective optimized by the
/// solver module.
double comp_suff_diff(const Instance& x, const Attribution& e,
                      const Predictor& pred);

/// 1 iff removing the single most important feature flips the decision.
int df_mit(const Instance& x, const Attribution& e, const Predictor& pred);

/// Smallest fraction l/L of top-feature removals that flips the decision;
/// 1.0 if no prefix removal flips it. Lower is better.
double df_frac(const Instance& x, const Attribution& e, const Predictor& pred);

/// Spearman correlation between single-feature deletion impacts and
/// attribution values, both aligned in importance order. Absent for L < 2
/// or when either side has zero rank variance.
std::optional<double> rank_del(const Instance& x, const Attribution& e,
                               const Predictor& pred);

/// Spearman correlation between the prediction curve of the reversed
/// deletion sequence (features inserted from the least important to the
/// most important) and the monotone sequence 0..L.
///
/// Caveat: features with negative contribution are ranked low and thus
/// inserted first, which makes the curve U-shaped for faithful
/// explanations. Near-random orderings produce a more monotone curve and
/// can therefore score higher on this metric; treat it with care.
std::optional<double> rank_ins(const Instance& x, const Attribution& e,
                               const Predictor& pred);

/// Spearman rank correlation with average ranks for ties. Returns nullopt
/// if either vector has zero rank variance; throws std::invalid_argument
/// on length mismatch or length < 2.
std::optional<double> spearman(std::span<const double> a,
                               std::span<const double> b);

struct CurvePoint {
  double fraction;  // l / L
  double value;     // f(x) - f(reduced)
};

struct Curves {
  std::vector<CurvePoint> deletion;   // f(x) - f(x with top-l removed)
  std::vector<CurvePoint> insertion;  // f(x) - f(x with only top-l kept)
};

/// Per-prefix deviation curves; the plain means of the two value columns
/// equal comprehensiveness and sufficiency.
Curves curve_points(const Instance& x, const Attribution& e,
                    const Predictor& pred);

/// All metrics in one pass, sharing the reduced-instance evaluations.
MetricReport evaluate_metrics(const Instance& x, const Attribution& e,
                              const Predictor& pred);

}  // namespace attrbeam
