#pragma once

#include "run_config.hpp"

namespace attrbeam::cli {

/// Writes attributions.jsonl and heatmap.html for one explainer.
int cmd_explain(const RunConfig& config);

/// Writes metrics.csv (one row per explainer) and curves.json.
int cmd_benchmark(const RunConfig& config);

/// Writes gt_scores.csv over the configured (type, symmetry) conditions.
int cmd_gt_eval(const RunConfig& config);

/// Writes perturb.csv and perturb_crossings.json.
int cmd_perturb(const RunConfig& config);

/// Writes oracle_check.csv comparing beam search with exhaustive search.
int cmd_oracle_check(const RunConfig& config);

}  // namespace attrbeam::cli
