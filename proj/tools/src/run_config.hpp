#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "attrbeam/explainers.hpp"
#include "attrbeam/lab.hpp"
#include "attrbeam/solver.hpp"
#include "errors.hpp"

namespace attrbeam::cli {

/// One structured config document drives every command; unknown keys are
/// rejected so typos cannot silently fall back to defaults.
struct RunConfig {
  std::string dataset;
  std::string predictor_type = "lexicon";
  std::string predictor_weights;

  std::uint64_t seed = 0;
  std::string out = "out";
  std::size_t jobs = 1;
  bool no_timestamp = false;

  std::string explainer = "solver";  // `explain` runs a single explainer
  std::vector<std::string> explainers = {"solver", "occl", "lime", "shap",
                                         "random"};

  std::size_t beam_size = 100;
  std::size_t cache_capacity = std::size_t{1} << 20;
  MetricId metric = MetricId::delta;

  ExplainerConfig explainer_config;

  std::vector<GtType> gt_types = {GtType::short_addition,
                                  GtType::long_addition, GtType::replacement};
  std::vector<GtSymmetry> gt_symmetries = {GtSymmetry::symmetric,
                                           GtSymmetry::asymmetric};

  std::vector<double> perturb_s_grid = {0, 1, 2, 3, 4};
  std::size_t perturb_trials = 20;

  std::size_t oracle_cap = 8;
};

/// Command-line overrides applied on top of the config file.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> jobs;
  bool no_timestamp = false;
};

RunConfig load_run_config(const std::string& path,
                          const ConfigOverrides& overrides);

std::string gt_type_name(GtType type);
std::string gt_symmetry_name(GtSymmetry symmetry);

}  // namespace attrbeam::cli
