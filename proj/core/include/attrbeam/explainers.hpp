#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "attrbeam/attribution.hpp"
#include "attrbeam/instance.hpp"
#include "attrbeam/predictor.hpp"

namespace attrbeam {

/// Thrown when an explainer requires a capability (e.g. embedding
/// gradients) the given predictor does not provide.
struct capability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExplainerConfig {
  std::size_t lime_samples = 1000;
  double lime_ridge = 1e-3;
  /// Kernel width for the locality weights; defaults to 0.25 * sqrt(L)
  /// when unset.
  std::optional<double> lime_kernel_width;
  std::size_t shap_permutations = 200;
  std::size_t intg_steps = 50;
  std::uint64_t seed = 0;
};

/// e_l = f(x) - f(x with feature l removed), where f is the probability of
/// the class predicted on the full input.
Attribution occlusion(const Instance& x, const Predictor& pred);

/// e_l = L2 norm of the gradient of the predicted-class logit with respect
/// to feature l's embedding. Nonnegative by construction, so the values
/// carry no sign information. Throws capability_error for predictors
/// without embedding gradients.
Attribution vanilla_grad(const Instance& x, const Predictor& pred);

/// Path integral of the embedding gradient along the segment from the zero
/// embedding to the input embedding:
/// e_l = embed_l . (1/steps) * sum_{k=1..steps} grad_l((k/steps) * embed).
/// Satisfies completeness: sum_l e_l ~= logit(x) - logit(zero embedding).
Attribution integrated_gradients(const Instance& x, const Predictor& pred,
                                 std::size_t steps);

/// Local surrogate: sample feature-presence masks (each feature kept with
/// probability 1/2), weight by exp(-(removed_fraction)^2 / width^2), and
/// fit a weighted ridge regression of f(masked x) on the mask indicators.
/// When 2^L <= 1024 every mask is enumerated exactly once instead of
/// sampled. Deterministic given config.seed.
Attribution lime(const Instance& x, const Predictor& pred,
                 const ExplainerConfig& config = {});

/// Shapley values by Monte-Carlo permutation sampling of marginal
/// contributions; absent features follow the instance removal semantics.
/// The efficiency identity sum_l e_l = f(x) - f(empty) holds exactly.
/// Deterministic given config.seed.
Attribution shap_sampling(const Instance& x, const Predictor& pred,
                          const ExplainerConfig& config = {});

/// I.i.d. uniform(-1, 1) values; reference baseline.
Attribution random_explainer(const Instance& x, std::uint64_t seed);

}  // namespace attrbeam
