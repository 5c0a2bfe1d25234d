#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include "attrbeam/lab.hpp"
#include "attrbeam/metrics.hpp"
#include "attrbeam/rng.hpp"
#include "attrbeam/solver.hpp"
#include "dataset_io.hpp"
#include "explainer_registry.hpp"
#include "parallel.hpp"
#include "reports.hpp"

namespace attrbeam::cli {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& config, const char* file) {
  fs::create_directories(config.out);
  return (fs::path(config.out) / file).string();
}

std::unique_ptr<Predictor> load_configured_predictor(const RunConfig& config) {
  return load_predictor(config.predictor_type, config.predictor_weights);
}

// Piecewise-linear resampling of an (l/L, value) curve onto a shared grid.
double interpolate(const std::vector<CurvePoint>& points, double fraction) {
  if (fraction <= points.front().fraction) {
    return points.front().value;
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (fraction <= points[i].fraction) {
      const double span = points[i].fraction - points[i - 1].fraction;
      const double t =
          span > 0.0 ? (fraction - points[i - 1].fraction) / span : 1.0;
      return points[i - 1].value +
             t * (points[i].value - points[i - 1].value);
    }
  }
  return points.back().value;
}

std::vector<MetricReport> corpus_reports(
    const std::vector<Instance>& instances,
    const std::vector<Attribution>& attributions, const Predictor& pred,
    std::size_t jobs) {
  std::vector<MetricReport> reports(instances.size());
  parallel_for(instances.size(), jobs, [&](std::size_t i) {
    reports[i] = evaluate_metrics(instances[i], attributions[i], pred);
  });
  return reports;
}

}  // namespace

int cmd_explain(const RunConfig& config) {
  const Dataset dataset = load_dataset(config.dataset);
  const auto pred = load_configured_predictor(config);
  const ExplainerRun run =
      run_explainer(config.explainer, dataset.instances, *pred, config);

  std::vector<AttributionRecord> records;
  records.reserve(dataset.instances.size());
  for (std::size_t i = 0; i < dataset.instances.size(); ++i) {
    AttributionRecord record;
    record.index = i;
    record.explainer = config.explainer;
    record.tokens = feature_values(dataset.instances[i]);
    if (dataset.instances[i].kind() == InstanceKind::tabular) {
      for (const Feature& f : dataset.instances[i].features()) {
        record.names.push_back(f.name);
      }
    }
    record.values = run.attributions[i].values;
    record.ranks = ranked_importance(run.attributions[i]).ranks;
    records.push_back(std::move(record));
  }
  write_attributions_jsonl(out_path(config, "attributions.jsonl"), records);
  write_heatmap_html(out_path(config, "heatmap.html"),
                     "attrbeam heatmap: " + config.explainer,
                     dataset.instances, run.attributions,
                     !config.no_timestamp);
  return 0;
}

int cmd_benchmark(const RunConfig& config) {
  const Dataset dataset = load_dataset(config.dataset);
  const auto pred = load_configured_predictor(config);

  const std::vector<double> grid = [] {
    std::vector<double> g;
    for (int i = 0; i <= 20; ++i) {
      g.push_back(static_cast<double>(i) / 20.0);
    }
    return g;
  }();

  std::vector<MetricsRow> rows;
  std::vector<CurveSeries> curves;
  for (const std::string& id : config.explainers) {
    const ExplainerRun run =
        run_explainer(id, dataset.instances, *pred, config);
    const std::vector<MetricReport> reports = corpus_reports(
        dataset.instances, run.attributions, *pred, config.jobs);

    MetricsRow row;
    row.explainer = id;
    row.metrics = aggregate_reports(reports);
    if (!config.no_timestamp) {
      row.seconds_per_instance = run.seconds_per_instance;
    }
    rows.push_back(std::move(row));

    CurveSeries series;
    series.explainer = id;
    series.fractions = grid;
    series.mean_deletion.assign(grid.size(), 0.0);
    series.mean_insertion.assign(grid.size(), 0.0);
    std::vector<Curves> per_instance(dataset.instances.size());
    parallel_for(dataset.instances.size(), config.jobs, [&](std::size_t i) {
      per_instance[i] =
          curve_points(dataset.instances[i], run.attributions[i], *pred);
    });
    for (const Curves& c : per_instance) {
      for (std::size_t g = 0; g < grid.size(); ++g) {
        series.mean_deletion[g] += interpolate(c.deletion, grid[g]);
        series.mean_insertion[g] += interpolate(c.insertion, grid[g]);
      }
    }
    const double n = static_cast<double>(dataset.instances.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
      series.mean_deletion[g] /= n;
      series.mean_insertion[g] /= n;
    }
    series.example = per_instance.front();
    curves.push_back(std::move(series));
  }

  write_metrics_csv(out_path(config, "metrics.csv"), rows);
  write_curves_json(out_path(config, "curves.json"), curves);
  std::cout << "note: rank_ins rewards monotone insertion curves, which "
               "favors near-random orderings; see README\n";
  return 0;
}

int cmd_gt_eval(const RunConfig& config) {
  const Dataset dataset = load_dataset(config.dataset);
  std::vector<GtScoreRow> rows;
  for (std::size_t ti = 0; ti < config.gt_types.size(); ++ti) {
    for (std::size_t si = 0; si < config.gt_symmetries.size(); ++si) {
      GroundTruthSpec spec = default_ground_truth_spec(
          config.gt_types[ti], config.gt_symmetries[si],
          rng::derive_seed(config.seed, 1000 + ti, si));
      const GroundTruthCorpus corpus =
          build_ground_truth(dataset.instances, spec);
      const LexiconPredictor pred = induced_lexicon(spec);

      std::vector<Instance> included;
      std::vector<std::vector<std::size_t>> gt_sets;
      std::size_t excluded = 0;
      for (const GroundTruthInstance& item : corpus.items) {
        if (item.excluded) {
          ++excluded;
          continue;
        }
        included.push_back(item.instance);
        gt_sets.push_back(item.gt_indices);
      }

      for (const std::string& id : config.explainers) {
        const ExplainerRun run = run_explainer(id, included, pred, config);
        double pr_sum = 0.0, nr_sum = 0.0;
        for (std::size_t i = 0; i < included.size(); ++i) {
          const RankedImportance ranks =
              ranked_importance(run.attributions[i]);
          pr_sum += gt_precision(ranks, gt_sets[i]);
          nr_sum += gt_normalized_rank(ranks, gt_sets[i]);
        }
        GtScoreRow row;
        row.explainer = id;
        row.gt_type = gt_type_name(config.gt_types[ti]);
        row.symmetry = gt_symmetry_name(config.gt_symmetries[si]);
        const double n = static_cast<double>(included.size());
        row.precision = included.empty() ? 0.0 : pr_sum / n;
        row.normalized_rank = included.empty() ? 0.0 : nr_sum / n;
        row.n_included = included.size();
        row.n_excluded = excluded;
        rows.push_back(std::move(row));
      }
    }
  }
  write_gt_scores_csv(out_path(config, "gt_scores.csv"), rows);
  return 0;
}

int cmd_perturb(const RunConfig& config) {
  const Dataset dataset = load_dataset(config.dataset);
  const auto pred = load_configured_predictor(config);

  std::vector<std::pair<std::string, std::vector<Attribution>>> outputs;
  for (const std::string& id : config.explainers) {
    outputs.emplace_back(
        id, run_explainer(id, dataset.instances, *pred, config).attributions);
  }
  const SweepResult sweep = perturbation_sweep(
      dataset.instances, *pred, outputs, config.perturb_s_grid,
      config.perturb_trials, rng::derive_seed(config.seed, 424242));

  write_perturb_csv(out_path(config, "perturb.csv"), sweep.rows);
  write_crossings_json(out_path(config, "perturb_crossings.json"),
                       sweep.crossings);
  return 0;
}

int cmd_oracle_check(const RunConfig& config) {
  const Dataset dataset = load_dataset(config.dataset);
  const auto pred = load_configured_predictor(config);

  std::vector<OracleCheckRow> rows(dataset.instances.size());
  parallel_for(dataset.instances.size(), config.jobs, [&](std::size_t i) {
    const Instance& x = dataset.instances[i];
    OracleCheckRow row;
    row.index = i;
    row.length = x.size();
    if (x.size() > config.oracle_cap) {
      row.status = "skipped_cap";
    } else {
      BeamConfig bc;
      bc.beam_size = config.beam_size;
      bc.cache_capacity = config.cache_capacity;
      const SolveResult beam = beam_search(x, *pred, bc);
      const OracleResult oracle =
          exhaustive_oracle(x, *pred, config.oracle_cap);
      row.status = "ok";
      row.delta_beam = beam.objective;
      row.delta_oracle = oracle.value;
      row.equal = std::fabs(beam.objective - oracle.value) <= 1e-12 ? 1 : 0;
    }
    rows[i] = std::move(row);
  });
  write_oracle_check_csv(out_path(config, "oracle_check.csv"), rows);
  return 0;
}

}  // namespace attrbeam::cli
