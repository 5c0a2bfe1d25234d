#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dataset_io.hpp"
#include "errors.hpp"
#include "run_config.hpp"

namespace {

using namespace attrbeam::cli;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> jobs;
  bool no_timestamp = false;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "Path to the JSON run config (see README for the schema)")
      ->required();
  cmd->add_option("--seed", args.seed,
                  "Override the config seed (default: config value or 0)");
  cmd->add_option("--out", args.out,
                  "Override the output directory (default: config value or "
                  "\"out\")");
  cmd->add_option("--jobs", args.jobs,
                  "Worker threads for per-instance work (default: 1)");
  cmd->add_flag("--no-timestamp", args.no_timestamp,
                "Reproducible outputs: omit the HTML timestamp and "
                "wall-clock columns");
}

RunConfig resolve(const CommonArgs& args) {
  ConfigOverrides overrides;
  overrides.seed = args.seed;
  overrides.out = args.out;
  overrides.jobs = args.jobs;
  overrides.no_timestamp = args.no_timestamp;
  return load_run_config(args.config_path, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "attrbeam: feature attributions that directly optimize faithfulness "
      "metrics, plus the metric suite, baseline explainers and evaluation "
      "harnesses"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* explain = app.add_subcommand(
      "explain", "Write per-instance attributions and an HTML heatmap");
  CLI::App* benchmark = app.add_subcommand(
      "benchmark", "Evaluate the configured explainers on all metrics");
  CLI::App* gt_eval = app.add_subcommand(
      "gt-eval", "Ground-truth recovery scores on modified corpora");
  CLI::App* perturb = app.add_subcommand(
      "perturb", "Metric degradation under rank perturbation");
  CLI::App* oracle_check = app.add_subcommand(
      "oracle-check", "Compare beam search with the exhaustive optimum");
  for (CLI::App* cmd : {explain, benchmark, gt_eval, perturb, oracle_check}) {
    attach_common(cmd, args);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = resolve(args);
    if (explain->parsed()) {
      return cmd_explain(config);
    }
    if (benchmark->parsed()) {
      return cmd_benchmark(config);
    }
    if (gt_eval->parsed()) {
      return cmd_gt_eval(config);
    }
    if (perturb->parsed()) {
      return cmd_perturb(config);
    }
    if (oracle_check->parsed()) {
      return cmd_oracle_check(config);
    }
    std::cerr << "no command selected\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DatasetError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownExplainerError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
