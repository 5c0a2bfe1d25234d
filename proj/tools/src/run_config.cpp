#include "run_config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace attrbeam::cli {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (allowed.count(key) == 0) {
      throw ConfigError("unknown config key \"" + key + "\" in " + where);
    }
  }
}

MetricId parse_metric(const std::string& name) {
  if (name == "comp") return MetricId::comp;
  if (name == "suff") return MetricId::suff;
  if (name == "delta") return MetricId::delta;
  throw ConfigError("unknown metric \"" + name +
                    "\"; expected comp, suff or delta");
}

GtType parse_gt_type(const std::string& name) {
  if (name == "short_addition") return GtType::short_addition;
  if (name == "long_addition") return GtType::long_addition;
  if (name == "replacement") return GtType::replacement;
  throw ConfigError("unknown ground-truth type \"" + name + "\"");
}

GtSymmetry parse_gt_symmetry(const std::string& name) {
  if (name == "symmetric") return GtSymmetry::symmetric;
  if (name == "asymmetric") return GtSymmetry::asymmetric;
  throw ConfigError("unknown ground-truth symmetry \"" + name + "\"");
}

}  // namespace

std::string gt_type_name(GtType type) {
  switch (type) {
    case GtType::short_addition:
      return "short_addition";
    case GtType::long_addition:
      return "long_addition";
    case GtType::replacement:
      return "replacement";
  }
  return "?";
}

std::string gt_symmetry_name(GtSymmetry symmetry) {
  return symmetry == GtSymmetry::symmetric ? "symmetric" : "asymmetric";
}

RunConfig load_run_config(const std::string& path,
                          const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config not readable: " + path);
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON (" + path + "): " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }
  reject_unknown_keys(
      doc, "the config root",
      {"dataset", "predictor", "seed", "out", "jobs", "no_timestamp",
       "explainer", "explainers", "beam_size", "cache_capacity", "metric",
       "explainer_config", "gt", "perturb", "oracle_cap"});

  RunConfig config;
  try {
    if (!doc.contains("dataset") || !doc["dataset"].is_string()) {
      throw ConfigError("config needs a \"dataset\" path");
    }
    config.dataset = doc["dataset"].get<std::string>();

    if (doc.contains("predictor")) {
      const json& p = doc["predictor"];
      reject_unknown_keys(p, "\"predictor\"", {"type", "weights_path"});
      config.predictor_type = p.value("type", std::string("lexicon"));
      if (!p.contains("weights_path")) {
        throw ConfigError("\"predictor\" needs \"weights_path\"");
      }
      config.predictor_weights = p["weights_path"].get<std::string>();
    } else {
      throw ConfigError("config needs a \"predictor\" object");
    }

    config.seed = doc.value("seed", std::uint64_t{0});
    config.out = doc.value("out", std::string("out"));
    config.jobs = doc.value("jobs", std::size_t{1});
    config.no_timestamp = doc.value("no_timestamp", false);
    config.explainer = doc.value("explainer", std::string("solver"));
    if (doc.contains("explainers")) {
      config.explainers.clear();
      for (const json& id : doc["explainers"]) {
        config.explainers.push_back(id.get<std::string>());
      }
      if (config.explainers.empty()) {
        throw ConfigError("\"explainers\" must name at least one explainer");
      }
    }
    config.beam_size = doc.value("beam_size", std::size_t{100});
    config.cache_capacity =
        doc.value("cache_capacity", std::size_t{1} << 20);
    config.metric = parse_metric(doc.value("metric", std::string("delta")));

    if (doc.contains("explainer_config")) {
      const json& e = doc["explainer_config"];
      reject_unknown_keys(e, "\"explainer_config\"",
                          {"lime_samples", "lime_ridge", "lime_kernel_width",
                           "shap_permutations", "intg_steps"});
      auto& ec = config.explainer_config;
      ec.lime_samples = e.value("lime_samples", ec.lime_samples);
      ec.lime_ridge = e.value("lime_ridge", ec.lime_ridge);
      if (e.contains("lime_kernel_width") &&
          !e["lime_kernel_width"].is_null()) {
        ec.lime_kernel_width = e["lime_kernel_width"].get<double>();
      }
      ec.shap_permutations =
          e.value("shap_permutations", ec.shap_permutations);
      ec.intg_steps = e.value("intg_steps", ec.intg_steps);
    }

    if (doc.contains("gt")) {
      const json& g = doc["gt"];
      reject_unknown_keys(g, "\"gt\"", {"types", "symmetries"});
      if (g.contains("types")) {
        config.gt_types.clear();
        for (const json& t : g["types"]) {
          config.gt_types.push_back(parse_gt_type(t.get<std::string>()));
        }
      }
      if (g.contains("symmetries")) {
        config.gt_symmetries.clear();
        for (const json& s : g["symmetries"]) {
          config.gt_symmetries.push_back(
              parse_gt_symmetry(s.get<std::string>()));
        }
      }
    }

    if (doc.contains("perturb")) {
      const json& p = doc["perturb"];
      reject_unknown_keys(p, "\"perturb\"", {"s_grid", "trials"});
      if (p.contains("s_grid")) {
        config.perturb_s_grid.clear();
        for (const json& s : p["s_grid"]) {
          config.perturb_s_grid.push_back(s.get<double>());
        }
      }
      config.perturb_trials = p.value("trials", config.perturb_trials);
    }

    config.oracle_cap = doc.value("oracle_cap", std::size_t{8});
  } catch (const json::exception& e) {
    throw ConfigError("config value has the wrong type: " +
                      std::string(e.what()));
  }

  if (overrides.seed) {
    config.seed = *overrides.seed;
  }
  if (overrides.out) {
    config.out = *overrides.out;
  }
  if (overrides.jobs) {
    config.jobs = *overrides.jobs;
  }
  if (overrides.no_timestamp) {
    config.no_timestamp = true;
  }
  if (config.jobs == 0) {
    throw ConfigError("jobs must be >= 1");
  }
  return config;
}

}  // namespace attrbeam::cli
