#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "attrbeam/explainers.hpp"
#include "attrbeam/metrics.hpp"
#include "attrbeam/solver.hpp"
#include "helpers.hpp"

using namespace attrbeam;
using namespace testutil;

namespace {

// Agreement-count oracle for the shift offset, enumerated independently of
// the implementation.
std::size_t shift_oracle_k(const std::vector<int>& occl_signs,
                           const std::vector<int>& ranks) {
  const std::size_t n = ranks.size();
  std::size_t best_k = 0;
  int best = -1;
  for (std::size_t k = 0; k <= n; ++k) {
    int agree = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int s = occl_signs[i];
      const int value = ranks[i] - static_cast<int>(k);
      if (s == 0) {
        ++agree;
      } else if (value > 0 && s > 0) {
        ++agree;
      } else if (value == 0 && s > 0) {
        ++agree;
      } else if (value < 0 && s < 0) {
        ++agree;
      }
    }
    if (agree > best) {
      best = agree;
      best_k = k;
    }
  }
  return best_k;
}

std::vector<int> occlusion_signs(const Instance& x, const Predictor& pred) {
  const Attribution occl = occlusion(x, pred);
  std::vector<int> signs;
  for (double v : occl.values) {
    signs.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
  }
  return signs;
}

}  // namespace

TEST_CASE("partial delta terms match direct endpoint evaluations") {
  auto corpus = make_lexicon_corpus(5, 2, 6, 111);
  for (const Instance& x : corpus.instances) {
    SubsetEvaluator eval(x, corpus.predictor, 1 << 10);
    PartialExplanation empty;
    const double f_empty =
        target_prob(corpus.predictor, x,
                    Instance::reduced({}, InstanceKind::text));
    const double f_full = target_prob(corpus.predictor, x, x);
    CHECK(partial_delta_term(empty, eval) ==
          doctest::Approx(f_empty - f_full).epsilon(1e-15));

    PartialExplanation full;
    for (std::uint32_t i = 0; i < x.size(); ++i) {
      full.order.push_back(i);
      full.assigned_mask |= (std::uint64_t{1} << i);
    }
    CHECK(partial_delta_term(full, eval) ==
          doctest::Approx(f_full - f_empty).epsilon(1e-15));
  }
}

TEST_CASE("summed prefix terms reproduce the metric value") {
  auto corpus = make_lexicon_corpus(10, 2, 7, 113);
  std::mt19937_64 gen(1);
  for (const Instance& x : corpus.instances) {
    const std::size_t n = x.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), gen);

    SubsetEvaluator eval(x, corpus.predictor, 1 << 10);
    PartialExplanation partial;
    double sum = partial_delta_term(partial, eval);
    for (std::uint32_t idx : order) {
      partial.order.push_back(idx);
      partial.assigned_mask |= (std::uint64_t{1} << idx);
      sum += partial_delta_term(partial, eval);
    }

    Attribution as_ranks;
    as_ranks.values.resize(n);
    const auto ranks = partial.assigned_ranks(n);
    for (const auto& [idx, rank] : ranks) {
      as_ranks.values[idx] = static_cast<double>(rank);
    }
    CHECK(sum / double(n + 1) ==
          doctest::Approx(comp_suff_diff(x, as_ranks, corpus.predictor))
              .epsilon(1e-12));
  }
}

TEST_CASE("beam search on a single feature assigns the only rank") {
  LexiconPredictor pred({{"bad", -2.0}}, 0.0);
  const Instance x = Instance::text({"bad"});
  const SolveResult result = beam_search(x, pred);
  CHECK(result.ranks.ranks == std::vector<int>{1});
  // Predicted class is 0 and the word supports it, so no shift applies.
  CHECK(result.attribution.values == std::vector<double>{1.0});
}

TEST_CASE("beam search with a full-width beam equals the brute force best") {
  auto corpus = make_lexicon_corpus(12, 3, 5, 127);
  for (const Instance& x : corpus.instances) {
    BeamConfig config;
    config.beam_size = 720;
    const SolveResult result = beam_search(x, corpus.predictor, config);
    const BruteBest best = brute_force_best(x, [&](const Attribution& e) {
      return comp_suff_diff(x, e, corpus.predictor);
    });
    CHECK(result.objective == doctest::Approx(best.value).epsilon(1e-12));
    CHECK(comp_suff_diff(x, result.attribution, corpus.predictor) ==
          doctest::Approx(best.value).epsilon(1e-12));
  }
}

TEST_CASE("wider beams never lose quality on the corpus mean") {
  auto corpus = make_lexicon_corpus(30, 5, 9, 131);
  double mean_small = 0.0, mean_large = 0.0;
  for (const Instance& x : corpus.instances) {
    BeamConfig narrow;
    narrow.beam_size = 1;
    BeamConfig wide;
    wide.beam_size = 100;
    mean_small += beam_search(x, corpus.predictor, narrow).objective;
    mean_large += beam_search(x, corpus.predictor, wide).objective;
  }
  CHECK(mean_large >= mean_small - 1e-9);
}

TEST_CASE("beam objective agrees with the metrics module") {
  auto corpus = make_lexicon_corpus(10, 2, 9, 137);
  for (const Instance& x : corpus.instances) {
    const SolveResult result = beam_search(x, corpus.predictor);
    CHECK(result.objective ==
          doctest::Approx(
              comp_suff_diff(x, result.attribution, corpus.predictor))
              .epsilon(1e-9));
  }
}

TEST_CASE("shift keeps all-positive rankings and flips all-negative ones") {
  // Every word supports the predicted class: k = 0.
  LexiconPredictor positive({{"great", 2.0}, {"warm", 1.0}, {"deft", 0.5}},
                            0.0);
  const Instance x = Instance::text({"great", "warm", "deft"});
  RankedImportance ranks{{3, 2, 1}};
  CHECK(shift(ranks, x, positive).values ==
        std::vector<double>{3.0, 2.0, 1.0});

  // Every word argues against the predicted class: k = L.
  LexiconPredictor negative({{"bad", -1.0}, {"dull", -0.5}}, 2.0);
  const Instance y = Instance::text({"bad", "dull"});
  RankedImportance yr{{2, 1}};
  const Attribution shifted = shift(yr, y, negative);
  CHECK(shifted.values == std::vector<double>{0.0, -1.0});
  for (double v : shifted.values) {
    CHECK(v <= 0.0);
  }
}

TEST_CASE("shift matches the enumeration oracle on mixed signs") {
  // Two supporting words, one opposing word ranked last.
  LexiconPredictor pred({{"great", 1.5}, {"warm", 0.7}, {"bad", -0.9}}, 0.0);
  const Instance x = Instance::text({"great", "warm", "bad"});
  const std::vector<int> signs = occlusion_signs(x, pred);
  CHECK(signs == std::vector<int>{1, 1, -1});
  RankedImportance ranks{{3, 2, 1}};
  const std::size_t k = shift_oracle_k(signs, ranks.ranks);
  CHECK(k == 2);  // zero shifted values may align with positive saliency
  const Attribution shifted = shift(ranks, x, pred);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(shifted.values[i] == double(ranks.ranks[i]) - double(k));
  }

  auto corpus = make_lexicon_corpus(15, 2, 7, 139);
  std::mt19937_64 gen(6);
  for (const Instance& inst : corpus.instances) {
    std::vector<int> perm(inst.size());
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), gen);
    RankedImportance r{perm};
    const std::size_t expect =
        shift_oracle_k(occlusion_signs(inst, corpus.predictor), perm);
    const Attribution got = shift(r, inst, corpus.predictor);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      CHECK(got.values[i] == double(perm[i]) - double(expect));
    }
  }
}

TEST_CASE("shift does not change any metric value") {
  auto corpus = make_lexicon_corpus(8, 2, 7, 149);
  for (const Instance& x : corpus.instances) {
    const SolveResult result = beam_search(x, corpus.predictor);
    Attribution unshifted;
    unshifted.values.assign(result.ranks.ranks.begin(),
                            result.ranks.ranks.end());
    const MetricReport a =
        evaluate_metrics(x, unshifted, corpus.predictor);
    const MetricReport b =
        evaluate_metrics(x, result.attribution, corpus.predictor);
    CHECK(a.comp == b.comp);
    CHECK(a.suff == b.suff);
    CHECK(a.delta == b.delta);
    CHECK(a.df_mit == b.df_mit);
    CHECK(a.df_frac == b.df_frac);
    CHECK(a.rank_del == b.rank_del);
    CHECK(a.rank_ins == b.rank_ins);
  }
}

TEST_CASE("exhaustive search finds the argmax and refuses above the cap") {
  auto corpus = make_lexicon_corpus(8, 3, 4, 151);
  for (const Instance& x : corpus.instances) {
    const OracleResult oracle = exhaustive_oracle(x, corpus.predictor);
    const BruteBest best = brute_force_best(x, [&](const Attribution& e) {
      return comp_suff_diff(x, e, corpus.predictor);
    });
    CHECK(oracle.value == doctest::Approx(best.value).epsilon(1e-12));
    CHECK(comp_suff_diff(x, oracle.attribution, corpus.predictor) ==
          doctest::Approx(best.value).epsilon(1e-12));
  }

  LexiconPredictor pred({{"a", 1.0}}, 0.0);
  CHECK(exhaustive_oracle(Instance::text({"a"}), pred).attribution.values ==
        std::vector<double>{1.0});

  const Instance too_long = Instance::text(
      {"a", "b", "c", "d", "e", "f", "g", "h", "i"});
  CHECK_THROWS_WITH_AS(exhaustive_oracle(too_long, pred),
                       doctest::Contains("cap"), std::out_of_range);
}

TEST_CASE("the exhaustive optimum dominates every heuristic explainer") {
  auto corpus = make_lexicon_corpus(10, 3, 6, 157);
  ExplainerConfig config;
  config.seed = 2;
  for (std::size_t i = 0; i < corpus.instances.size(); ++i) {
    const Instance& x = corpus.instances[i];
    const double best = exhaustive_oracle(x, corpus.predictor).value;
    const double tol = 1e-12;
    CHECK(best + tol >=
          comp_suff_diff(x, occlusion(x, corpus.predictor),
                         corpus.predictor));
    CHECK(best + tol >= comp_suff_diff(x, lime(x, corpus.predictor, config),
                                       corpus.predictor));
    CHECK(best + tol >=
          comp_suff_diff(x, shap_sampling(x, corpus.predictor, config),
                         corpus.predictor));
    CHECK(best + tol >=
          comp_suff_diff(x, random_explainer(x, 1000 + i),
                         corpus.predictor));
  }
}

TEST_CASE("solve_metric optimizes comprehensiveness and sufficiency") {
  auto corpus = make_lexicon_corpus(8, 3, 5, 163);
  for (const Instance& x : corpus.instances) {
    BeamConfig config;
    config.beam_size = 720;

    const SolveResult comp_result =
        solve_metric(x, corpus.predictor, MetricId::comp, config);
    const BruteBest comp_best = brute_force_best(
        x, [&](const Attribution& e) {
          return comprehensiveness(x, e, corpus.predictor);
        });
    CHECK(comp_result.objective ==
          doctest::Approx(comp_best.value).epsilon(1e-12));
    CHECK(comprehensiveness(x, comp_result.attribution, corpus.predictor) ==
          doctest::Approx(comp_best.value).epsilon(1e-12));

    const SolveResult suff_result =
        solve_metric(x, corpus.predictor, MetricId::suff, config);
    const BruteBest suff_best = brute_force_best(
        x, [&](const Attribution& e) {
          return -sufficiency(x, e, corpus.predictor);
        });
    CHECK(suff_result.objective ==
          doctest::Approx(-suff_best.value).epsilon(1e-12));

    // The sufficiency optimum is at least as good as the baselines.
    ExplainerConfig econfig;
    CHECK(suff_result.objective <=
          sufficiency(x, occlusion(x, corpus.predictor), corpus.predictor) +
              1e-12);
    CHECK(suff_result.objective <=
          sufficiency(x, shap_sampling(x, corpus.predictor, econfig),
                      corpus.predictor) +
              1e-12);

    const SolveResult delta_default = beam_search(x, corpus.predictor, config);
    const SolveResult delta_explicit =
        solve_metric(x, corpus.predictor, MetricId::delta, config);
    CHECK(delta_default.ranks == delta_explicit.ranks);
    CHECK(delta_default.objective == delta_explicit.objective);
  }
}

TEST_CASE("beam search never exceeds the exhaustive optimum") {
  auto corpus = make_lexicon_corpus(30, 3, 6, 167);
  for (const Instance& x : corpus.instances) {
    BeamConfig narrow;
    narrow.beam_size = 3;
    const SolveResult result = beam_search(x, corpus.predictor, narrow);
    const double best = exhaustive_oracle(x, corpus.predictor).value;
    CHECK(result.objective <= best + 1e-12);
  }
}

TEST_CASE("caching is semantics-free and bounded") {
  auto corpus = make_lexicon_corpus(6, 4, 8, 173);
  for (const Instance& x : corpus.instances) {
    BeamConfig cached;
    cached.beam_size = 20;
    BeamConfig uncached = cached;
    uncached.cache_capacity = 0;
    BeamConfig tiny = cached;
    tiny.cache_capacity = 4;  // forces LRU eviction

    const SolveResult a = beam_search(x, corpus.predictor, cached);
    const SolveResult b = beam_search(x, corpus.predictor, uncached);
    const SolveResult c = beam_search(x, corpus.predictor, tiny);
    CHECK(a.ranks == b.ranks);
    CHECK(a.attribution == b.attribution);
    CHECK(a.objective == b.objective);
    CHECK(a.ranks == c.ranks);
    CHECK(a.objective == c.objective);
    CHECK(a.model_calls < b.model_calls);
  }
}

TEST_CASE("beam search is deterministic") {
  auto corpus = make_lexicon_corpus(5, 5, 9, 179);
  for (const Instance& x : corpus.instances) {
    const SolveResult a = beam_search(x, corpus.predictor);
    const SolveResult b = beam_search(x, corpus.predictor);
    CHECK(a.ranks == b.ranks);
    CHECK(a.attribution == b.attribution);
    CHECK(a.objective == b.objective);
    CHECK(a.model_calls == b.model_calls);
  }
}

TEST_CASE("subset evaluator rejects oversized instances and bad configs") {
  std::vector<std::string> many(65, "x");
  LexiconPredictor pred({{"x", 0.1}}, 0.0);
  CHECK_THROWS_AS(SubsetEvaluator(Instance::text(many), pred, 16),
                  std::invalid_argument);
  BeamConfig zero;
  zero.beam_size = 0;
  CHECK_THROWS_AS(beam_search(Instance::text({"x"}), pred, zero),
                  std::invalid_argument);
}
