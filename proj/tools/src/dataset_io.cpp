#include "dataset_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace attrbeam::cli {

namespace {

using nlohmann::json;

json parse_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) {
    throw DatasetError(std::string(what) + " not readable: " + path);
  }
  json parsed;
  try {
    in >> parsed;
  } catch (const json::exception& e) {
    throw DatasetError(std::string(what) + " is not valid JSON (" + path +
                       "): " + e.what());
  }
  return parsed;
}

std::string value_to_string(const json& v, const std::string& context) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_number() || v.is_boolean()) {
    return v.dump();
  }
  throw DatasetError("unsupported value for " + context +
                     "; expected string or number");
}

}  // namespace

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DatasetError("dataset not readable: " + path);
  }
  Dataset dataset;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw DatasetError("dataset line " + std::to_string(line_no) +
                         " is not valid JSON: " + e.what());
    }
    if (!record.is_object() || !record.contains("label") ||
        !record["label"].is_number_integer()) {
      throw DatasetError("dataset line " + std::to_string(line_no) +
                         " needs an integer \"label\"");
    }
    const int label = record["label"].get<int>();

    if (record.contains("tokens")) {
      if (!record["tokens"].is_array() || record["tokens"].empty()) {
        throw DatasetError("dataset line " + std::to_string(line_no) +
                           ": \"tokens\" must be a non-empty array");
      }
      std::vector<std::string> tokens;
      for (const json& t : record["tokens"]) {
        tokens.push_back(value_to_string(t, "token"));
      }
      dataset.instances.push_back(Instance::text(tokens));
    } else if (record.contains("fields")) {
      if (!record["fields"].is_object() || record["fields"].empty() ||
          !record.contains("baselines") || !record["baselines"].is_object()) {
        throw DatasetError("dataset line " + std::to_string(line_no) +
                           ": tabular records need \"fields\" and "
                           "\"baselines\" objects");
      }
      std::vector<Feature> features;
      for (const auto& [name, value] : record["fields"].items()) {
        if (!record["baselines"].contains(name)) {
          throw DatasetError("dataset line " + std::to_string(line_no) +
                             ": field \"" + name + "\" has no baseline");
        }
        features.push_back(Feature::field(
            name, value_to_string(value, "field " + name),
            value_to_string(record["baselines"][name],
                            "baseline " + name)));
      }
      dataset.instances.emplace_back(std::move(features),
                                     InstanceKind::tabular);
    } else {
      throw DatasetError("dataset line " + std::to_string(line_no) +
                         " needs \"tokens\" or \"fields\"");
    }
    dataset.labels.push_back(label);
  }
  if (dataset.instances.empty()) {
    throw DatasetError("dataset is empty: " + path);
  }
  return dataset;
}

std::unique_ptr<Predictor> load_predictor(const std::string& type,
                                          const std::string& weights_path) {
  const json spec = parse_json_file(weights_path, "predictor weights");
  if (type == "lexicon") {
    if (!spec.contains("weights") || !spec["weights"].is_object()) {
      throw DatasetError("lexicon weights file needs a \"weights\" object");
    }
    std::unordered_map<std::string, double> weights;
    for (const auto& [token, w] : spec["weights"].items()) {
      if (!w.is_number()) {
        throw DatasetError("lexicon weight for \"" + token +
                           "\" must be a number");
      }
      weights[token] = w.get<double>();
    }
    const double bias = spec.value("bias", 0.0);
    return std::make_unique<LexiconPredictor>(std::move(weights), bias);
  }
  if (type == "linear_embed") {
    if (!spec.contains("weight") || !spec["weight"].is_array() ||
        !spec.contains("embeddings") || !spec["embeddings"].is_object()) {
      throw DatasetError(
          "linear_embed weights file needs \"weight\" and \"embeddings\"");
    }
    std::vector<double> weight;
    for (const json& v : spec["weight"]) {
      weight.push_back(v.get<double>());
    }
    std::unordered_map<std::string, std::vector<double>> table;
    for (const auto& [token, row] : spec["embeddings"].items()) {
      std::vector<double> values;
      for (const json& v : row) {
        values.push_back(v.get<double>());
      }
      if (values.size() != weight.size()) {
        throw DatasetError("embedding for \"" + token +
                           "\" does not match the weight dimension");
      }
      table[token] = std::move(values);
    }
    const double bias = spec.value("bias", 0.0);
    return std::make_unique<LinearEmbedPredictor>(std::move(table),
                                                  std::move(weight), bias);
  }
  throw DatasetError("unknown predictor type: " + type);
}

}  // namespace attrbeam::cli
