#pragma once

#include <string>
#include <vector>

#include "attrbeam/attribution.hpp"
#include "attrbeam/instance.hpp"
#include "attrbeam/predictor.hpp"
#include "run_config.hpp"

namespace attrbeam::cli {

/// Known explainer ids: grad, intg, lime, shap, occl, random, solver.
bool is_known_explainer(const std::string& id);
const std::vector<std::string>& known_explainers();

struct ExplainerRun {
  std::string id;
  std::vector<Attribution> attributions;
  double seconds_per_instance = 0.0;
};

/// Computes one attribution per instance. Sampling explainers derive an
/// independent seed per (explainer, instance) from config.seed, so results
/// do not depend on the number of jobs. Throws UnknownExplainerError for
/// ids outside the registry.
ExplainerRun run_explainer(const std::string& id,
                           const std::vector<Instance>& instances,
                           const Predictor& pred, const RunConfig& config);

/// Single-instance dispatch used by the corpus runner.
Attribution explain_one(const std::string& id, const Instance& x,
                        const Predictor& pred, const RunConfig& config,
                        std::uint64_t instance_seed);

}  // namespace attrbeam::cli
