#include "explainer_registry.hpp"

#include <algorithm>
#include <chrono>

#include "attrbeam/explainers.hpp"
#include "attrbeam/rng.hpp"
#include "attrbeam/solver.hpp"
#include "parallel.hpp"

namespace attrbeam::cli {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : s) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

const std::vector<std::string>& known_explainers() {
  static const std::vector<std::string> ids = {
      "grad", "intg", "lime", "shap", "occl", "random", "solver"};
  return ids;
}

bool is_known_explainer(const std::string& id) {
  const auto& ids = known_explainers();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

Attribution explain_one(const std::string& id, const Instance& x,
                        const Predictor& pred, const RunConfig& config,
                        std::uint64_t instance_seed) {
  if (id == "grad") {
    return vanilla_grad(x, pred);
  }
  if (id == "intg") {
    return integrated_gradients(x, pred, config.explainer_config.intg_steps);
  }
  if (id == "occl") {
    return occlusion(x, pred);
  }
  if (id == "random") {
    return random_explainer(x, instance_seed);
  }
  if (id == "lime") {
    ExplainerConfig ec = config.explainer_config;
    ec.seed = instance_seed;
    return lime(x, pred, ec);
  }
  if (id == "shap") {
    ExplainerConfig ec = config.explainer_config;
    ec.seed = instance_seed;
    return shap_sampling(x, pred, ec);
  }
  if (id == "solver") {
    BeamConfig bc;
    bc.beam_size = config.beam_size;
    bc.cache_capacity = config.cache_capacity;
    return solve_metric(x, pred, config.metric, bc).attribution;
  }
  throw UnknownExplainerError("unknown explainer id: " + id);
}

ExplainerRun run_explainer(const std::string& id,
                           const std::vector<Instance>& instances,
                           const Predictor& pred, const RunConfig& config) {
  if (!is_known_explainer(id)) {
    throw UnknownExplainerError("unknown explainer id: " + id);
  }
  ExplainerRun run;
  run.id = id;
  run.attributions.resize(instances.size());
  const std::uint64_t salt = fnv1a(id);
  const auto start = std::chrono::steady_clock::now();
  parallel_for(instances.size(), config.jobs, [&](std::size_t i) {
    run.attributions[i] =
        explain_one(id, instances[i], pred, config,
                    rng::derive_seed(config.seed, salt, i));
  });
  const auto stop = std::chrono::steady_clock::now();
  run.seconds_per_instance =
      std::chrono::duration<double>(stop - start).count() /
      static_cast<double>(instances.empty() ? 1 : instances.size());
  return run;
}

}  // namespace attrbeam::cli
