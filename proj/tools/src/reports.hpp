#pragma once

#include <optional>
#include <string>
#include <vector>

#include "attrbeam/attribution.hpp"
#include "attrbeam/instance.hpp"
#include "attrbeam/lab.hpp"
#include "attrbeam/metrics.hpp"

namespace attrbeam::cli {

// All writers produce byte-deterministic output for fixed inputs; the only
// volatile pieces (an HTML timestamp line and wall-clock columns) are
// disabled by the reproducible-output flag.

struct AttributionRecord {
  std::size_t index = 0;
  std::string explainer;
  std::vector<std::string> tokens;
  std::vector<std::string> names;  // tabular field names; empty for text
  std::vector<double> values;
  std::vector<int> ranks;
};

void write_attributions_jsonl(const std::string& path,
                              const std::vector<AttributionRecord>& records);

/// Static heatmap: one block per instance, tokens shaded red for positive
/// and blue for negative values, intensity proportional to |value| scaled
/// by the instance maximum.
void write_heatmap_html(const std::string& path, const std::string& title,
                        const std::vector<Instance>& instances,
                        const std::vector<Attribution>& attributions,
                        bool with_timestamp);

struct MetricsRow {
  std::string explainer;
  AggregateMetrics metrics;
  std::optional<double> seconds_per_instance;  // absent in reproducible mode
};

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricsRow>& rows);

struct CurveSeries {
  std::string explainer;
  std::vector<double> fractions;       // shared grid
  std::vector<double> mean_deletion;   // f(x) - f(top-l removed), averaged
  std::vector<double> mean_insertion;  // f(x) - f(top-l kept), averaged
  Curves example;                      // exact points for the first instance
};

void write_curves_json(const std::string& path,
                       const std::vector<CurveSeries>& series);

struct GtScoreRow {
  std::string explainer;
  std::string gt_type;
  std::string symmetry;
  double precision = 0.0;
  double normalized_rank = 0.0;
  std::size_t n_included = 0;
  std::size_t n_excluded = 0;
};

void write_gt_scores_csv(const std::string& path,
                         const std::vector<GtScoreRow>& rows);

void write_perturb_csv(const std::string& path,
                       const std::vector<SweepRow>& rows);

void write_crossings_json(const std::string& path,
                          const std::vector<CrossingRecord>& crossings);

struct OracleCheckRow {
  std::size_t index = 0;
  std::size_t length = 0;
  std::string status;  // "ok" or "skipped_cap"
  std::optional<double> delta_beam;
  std::optional<double> delta_oracle;
  std::optional<int> equal;
};

void write_oracle_check_csv(const std::string& path,
                            const std::vector<OracleCheckRow>& rows);

/// Fixed six-decimal formatting shared by the CSV writers.
std::string fmt_csv(double v);

}  // namespace attrbeam::cli
