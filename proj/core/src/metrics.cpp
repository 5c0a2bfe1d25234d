#include "attrbeam/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "attrbeam/reductions.hpp"

namespace attrbeam {

namespace {

void check_lengths(const Instance& x, const Attribution& e) {
  if (e.size() != x.size()) {
    throw std::invalid_argument(
        "attribution length does not match instance length");
  }
}

// f(x with top-l removed) for l = 0..L, where f is the probability of the
// class predicted on the full input.
std::vector<double> deletion_scores(const Instance& x,
                                    const RankedImportance& ranks,
                                    const Predictor& pred, int label) {
  const std::size_t n = x.size();
  std::vector<double> scores(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    scores[l] = pred.class_probability(delete_top(x, ranks, l), label);
  }
  return scores;
}

// f(x with only top-l kept) for l = 0..L.
std::vector<double> insertion_scores(const Instance& x,
                                     const RankedImportance& ranks,
                                     const Predictor& pred, int label) {
  const std::size_t n = x.size();
  std::vector<double> scores(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    scores[l] = pred.class_probability(keep_top(x, ranks, l), label);
  }
  return scores;
}

double mean_drop(const std::vector<double>& scores) {
  const double fx = scores.front();
  double sum = 0.0;
  for (double s : scores) {
    sum += fx - s;
  }
  return sum / static_cast<double>(scores.size());
}

std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t pos = 0;
  while (pos < n) {
    std::size_t end = pos;
    while (end + 1 < n && v[idx[end + 1]] == v[idx[pos]]) {
      ++end;
    }
    const double avg =
        (static_cast<double>(pos + 1) + static_cast<double>(end + 1)) / 2.0;
    for (std::size_t k = pos; k <= end; ++k) {
      ranks[idx[k]] = avg;
    }
    pos = end + 1;
  }
  return ranks;
}

double mean_drop_suffix(const std::vector<double>& scores, double fx) {
  double sum = 0.0;
  for (double s : scores) {
    sum += fx - s;
  }
  return sum / static_cast<double>(scores.size());
}

}  // namespace

std::optional<double> spearman(std::span<const double> a,
                               std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("spearman: input lengths differ");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("spearman: need at least two observations");
  }
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const std::size_t n = ra.size();
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += ra[i];
    mean_b += rb[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = ra[i] - mean_a;
    const double db = rb[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    return std::nullopt;
  }
  return sab / std::sqrt(saa * sbb);
}

double comprehensiveness(const Instance& x, const Attribution& e,
                         const Predictor& pred) {
  check_lengths(x, e);
  const RankedImportance ranks = ranked_importance(e);
  const int label = pred.classify(x);
  return mean_drop(deletion_scores(x, ranks, pred, label));
}

double sufficiency(const Instance& x, const Attribution& e,
                   const Predictor& pred) {
  check_lengths(x, e);
  const RankedImportance ranks = ranked_importance(e);
  const int label = pred.classify(x);
  const std::vector<double> ins = insertion_scores(x, ranks, pred, label);
  return mean_drop_suffix(ins, ins.back());  // ins.back() == f(x)
}

double comp_suff_diff(const Instance& x, const Attribution& e,
                      const Predictor& pred) {
  return comprehensiveness(x, e, pred) - sufficiency(x, e, pred);
}

int df_mit(const Instance& x, const Attribution& e, const Predictor& pred) {
  check_lengths(x, e);
  const RankedImportance ranks = ranked_importance(e);
  return pred.classify(delete_top(x, ranks, 1)) != pred.classify(x) ? 1 : 0;
}

double df_frac(const Instance& x, const Attribution& e,
               const Predictor& pred) {
  check_lengths(x, e);
  const RankedImportance ranks = ranked_importance(e);
  const int original = pred.classify(x);
  const std::size_t n = x.size();
  for (std::size_t l = 1; l <= n; ++l) {
    if (pred.classify(delete_top(x, ranks, l)) != original) {
      return static_cast<double>(l) / static_cast<double>(n);
    }
  }
  return 1.0;
}

std::optional<double> rank_del(const Instance& x, const Attribution& e,
                               const Predictor& pred) {
  check_lengths(x, e);
  if (x.size() < 2) {
    return std::nullopt;
  }
  const RankedImportance ranks = ranked_importance(e);
  const int label = pred.classify(x);
  const double fx = pred.class_probability(x, label);
  const std::size_t n = x.size();
  // Impact of deleting the l-th most important feature, correlated against
  // the importance ranking itself (so the metric stays a function of the
  // induced ordering alone).
  std::vector<double> impacts(n), values(n);
  for (std::size_t l = 1; l <= n; ++l) {
    impacts[l - 1] =
        fx - pred.class_probability(marginal_delete(x, ranks, l), label);
    values[l - 1] = static_cast<double>(n - l + 1);
  }
  return spearman(impacts, values);
}

std::optional<double> rank_ins(const Instance& x, const Attribution& e,
                               const Predictor& pred) {
  check_lengths(x, e);
  const RankedImportance ranks = ranked_importance(e);
  const int label = pred.classify(x);
  const std::vector<double> del = deletion_scores(x, ranks, pred, label);
  const std::size_t n = x.size();
  std::vector<double> curve(n + 1), base(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    curve[i] = del[n - i];  // from the empty input up to the full one
    base[i] = static_cast<double>(i);
  }
  return spearman(curve, base);
}

Curves curve_points(const Instance& x, const Attribution& e,
                    const Predictor& pred) {
  check_lengths(x, e);
  const RankedImportance ranks = ranked_importance(e);
  const int label = pred.classify(x);
  const std::vector<double> del = deletion_scores(x, ranks, pred, label);
  const std::vector<double> ins = insertion_scores(x, ranks, pred, label);
  const double fx = del.front();
  const std::size_t n = x.size();
  Curves curves;
  curves.deletion.reserve(n + 1);
  curves.insertion.reserve(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    const double fraction =
        static_cast<double>(l) / static_cast<double>(n);
    curves.deletion.push_back({fraction, fx - del[l]});
    curves.insertion.push_back({fraction, fx - ins[l]});
  }
  return curves;
}

MetricReport evaluate_metrics(const Instance& x, const Attribution& e,
                              const Predictor& pred) {
  check_lengths(x, e);
  const RankedImportance ranks = ranked_importance(e);
  const int label = pred.classify(x);
  const std::size_t n = x.size();

  std::vector<Instance> deleted;
  deleted.reserve(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    deleted.push_back(delete_top(x, ranks, l));
  }
  std::vector<double> del(n + 1), ins(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    del[l] = pred.class_probability(deleted[l], label);
    ins[l] = pred.class_probability(keep_top(x, ranks, l), label);
  }
  const double fx = del.front();

  MetricReport report;
  report.comp = mean_drop(del);
  report.suff = mean_drop_suffix(ins, fx);
  report.delta = report.comp - report.suff;

  report.df_mit = pred.classify(deleted[1]) != label ? 1 : 0;
  report.df_frac = 1.0;
  for (std::size_t l = 1; l <= n; ++l) {
    if (pred.classify(deleted[l]) != label) {
      report.df_frac = static_cast<double>(l) / static_cast<double>(n);
      break;
    }
  }

  if (n >= 2) {
    std::vector<double> impacts(n), values(n);
    for (std::size_t l = 1; l <= n; ++l) {
      impacts[l - 1] =
          fx - pred.class_probability(marginal_delete(x, ranks, l), label);
      values[l - 1] = static_cast<double>(n - l + 1);
    }
    report.rank_del = spearman(impacts, values);
  }

  std::vector<double> curve(n + 1), base(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    curve[i] = del[n - i];
    base[i] = static_cast<double>(i);
  }
  report.rank_ins = spearman(curve, base);

  return report;
}

}  // namespace attrbeam
