#pragma once

#include <memory>
#include <string>
#include <vector>

#include "attrbeam/instance.hpp"
#include "attrbeam/predictor.hpp"
#include "errors.hpp"

namespace attrbeam::cli {

struct Dataset {
  std::vector<Instance> instances;
  std::vector<int> labels;
};

/// JSON Lines, one object per instance:
///   {"tokens": ["a", "b", ...], "label": 0|1}                      (text)
///   {"fields": {...}, "baselines": {...}, "label": 0|1}            (tabular)
/// Field and baseline values may be JSON strings or numbers. Throws
/// DatasetError on unreadable files or malformed records.
Dataset load_dataset(const std::string& path);

/// Predictor spec: {"type": "lexicon"|"linear_embed",
///                  "weights_path": "weights.json"}.
/// Lexicon weights file:     {"bias": 0.0, "weights": {token: weight}}.
/// Linear-embed weights file: {"bias": 0.0, "weight": [...],
///                             "embeddings": {token: [...]}}.
std::unique_ptr<Predictor> load_predictor(const std::string& type,
                                          const std::string& weights_path);

}  // namespace attrbeam::cli
