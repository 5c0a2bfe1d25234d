#pragma once

#include <stdexcept>

namespace attrbeam::cli {

// Exit codes: 2 for unusable inputs (config, dataset, predictor files),
// 3 for an unknown explainer id, 1 for anything else.

struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownExplainerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace attrbeam::cli
