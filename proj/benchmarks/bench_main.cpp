#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "attrbeam/explainers.hpp"
#include "attrbeam/metrics.hpp"
#include "attrbeam/rng.hpp"
#include "attrbeam/solver.hpp"

using namespace attrbeam;

namespace {

const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> vocab = {
      "great",  "superb", "wonderful", "charming", "crisp",   "warm",
      "bright", "tender", "lively",    "deft",     "bad",     "dull",
      "clumsy", "tired",  "flat",      "grim",     "shallow", "stale",
      "murky",  "rigid",  "film",      "movie",    "plot",    "scene"};
  return vocab;
}

LexiconPredictor make_predictor() {
  std::mt19937_64 gen(7);
  std::unordered_map<std::string, double> weights;
  for (const std::string& word : vocabulary()) {
    weights[word] = rng::uniform_range(gen, -2.0, 2.0);
  }
  return LexiconPredictor(std::move(weights), -0.1);
}

Instance make_instance(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::string> tokens;
  tokens.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    tokens.push_back(vocabulary()[rng::below(gen, vocabulary().size())]);
  }
  return Instance::text(tokens);
}

void BM_BeamSearchLength(benchmark::State& state) {
  const auto pred = make_predictor();
  const Instance x = make_instance(static_cast<std::size_t>(state.range(0)), 3);
  BeamConfig config;
  config.beam_size = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beam_search(x, pred, config));
  }
}
BENCHMARK(BM_BeamSearchLength)->DenseRange(4, 16, 4);

void BM_BeamSearchWidth(benchmark::State& state) {
  const auto pred = make_predictor();
  const Instance x = make_instance(10, 3);
  BeamConfig config;
  config.beam_size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(beam_search(x, pred, config));
  }
}
BENCHMARK(BM_BeamSearchWidth)->RangeMultiplier(4)->Range(1, 256);

void BM_ExhaustiveOracle(benchmark::State& state) {
  const auto pred = make_predictor();
  const Instance x = make_instance(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_oracle(x, pred, 8));
  }
}
BENCHMARK(BM_ExhaustiveOracle)->DenseRange(4, 8, 1);

void BM_MetricReport(benchmark::State& state) {
  const auto pred = make_predictor();
  const Instance x = make_instance(static_cast<std::size_t>(state.range(0)), 9);
  const Attribution e = occlusion(x, pred);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_metrics(x, e, pred));
  }
}
BENCHMARK(BM_MetricReport)->DenseRange(4, 16, 4);

void BM_ShapSampling(benchmark::State& state) {
  const auto pred = make_predictor();
  const Instance x = make_instance(10, 11);
  ExplainerConfig config;
  config.shap_permutations = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(shap_sampling(x, pred, config));
  }
}
BENCHMARK(BM_ShapSampling)->RangeMultiplier(4)->Range(50, 800);

void BM_Lime(benchmark::State& state) {
  const auto pred = make_predictor();
  const Instance x = make_instance(static_cast<std::size_t>(state.range(0)), 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lime(x, pred));
  }
}
BENCHMARK(BM_Lime)->DenseRange(6, 14, 4);

}  // namespace

BENCHMARK_MAIN();
