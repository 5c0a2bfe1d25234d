#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attrbeam/attribution.hpp"
#include "attrbeam/instance.hpp"
#include "attrbeam/metrics.hpp"
#include "attrbeam/predictor.hpp"

namespace attrbeam {

// ---------------------------------------------------------------------------
// Rank perturbation

/// Adds i.i.d. Gaussian noise of standard deviation s to every rank value
/// and re-ranks. s = 0 returns the input ranks unchanged.
RankedImportance perturb_ranks(const RankedImportance& ranks, double s,
                               std::uint64_t seed);

/// Corpus means of all metrics for one condition.
struct AggregateMetrics {
  double mean_comp = 0.0;
  double mean_suff = 0.0;
  double mean_delta = 0.0;
  double flip_rate = 0.0;      // mean df_mit
  double mean_df_frac = 0.0;
  std::optional<double> mean_rank_del;  // over instances where defined
  std::optional<double> mean_rank_ins;
  std::size_t n = 0;
  std::size_t n_rank_del = 0;
  std::size_t n_rank_ins = 0;
};

AggregateMetrics aggregate_reports(const std::vector<MetricReport>& reports);

struct SweepRow {
  std::string explainer;
  double s = 0.0;
  AggregateMetrics metrics;
};

/// Original vs perturbed rank vectors for one instance; data for
/// crossing-diagram plots.
struct CrossingRecord {
  std::string explainer;
  double s = 0.0;
  std::vector<int> original;
  std::vector<int> perturbed;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<CrossingRecord> crossings;
};

/// For every explainer and noise level, perturb each instance's ranking
/// `trials` times, re-evaluate all metrics, and average. The s = 0 row
/// reproduces the unperturbed metric values exactly. Noise streams are
/// split per (explainer, s, trial, instance) from the root seed.
SweepResult perturbation_sweep(
    const std::vector<Instance>& instances, const Predictor& pred,
    const std::vector<std::pair<std::string, std::vector<Attribution>>>&
        explainer_outputs,
    const std::vector<double>& s_grid, std::size_t trials,
    std::uint64_t seed);

// ---------------------------------------------------------------------------
// Ground-truth corpus construction

enum class GtType { short_addition, long_addition, replacement };
enum class GtSymmetry { symmetric, asymmetric };

struct ReplacementSet {
  std::vector<std::string> words;
  std::string target0;  // substitute when the new label is 0
  std::string target1;  // substitute when the new label is 1
};

struct GroundTruthSpec {
  GtType type = GtType::short_addition;
  GtSymmetry symmetry = GtSymmetry::symmetric;
  /// label -> list of insertion blocks (single-token blocks for short
  /// additions, multi-token blocks for long ones).
  std::map<int, std::vector<std::vector<std::string>>> insertion_sets;
  std::vector<ReplacementSet> replacement_sets;
  std::uint64_t seed = 0;
};

/// Built-in insertion and replacement sets for the given modification.
GroundTruthSpec default_ground_truth_spec(GtType type, GtSymmetry symmetry,
                                          std::uint64_t seed);

struct GroundTruthInstance {
  Instance instance;
  int label = 0;                        // the randomized label y-hat
  std::vector<std::size_t> gt_indices;  // ground-truth word positions W
  /// True when the instance carries no ground-truth words (asymmetric
  /// additions with label 0, or replacement instances without any matching
  /// word); excluded instances do not enter score averages.
  bool excluded = false;
  std::string provenance;
};

struct GroundTruthCorpus {
  std::vector<GroundTruthInstance> items;
};

/// Applies the spec's modification to every instance: labels are drawn
/// uniformly, additions insert one block at the beginning or end (fair
/// coin), replacements rewrite every matching word to the label's target.
/// Asymmetric mode leaves label-0 instances untouched. Reproducible
/// byte-for-byte given the spec seed.
GroundTruthCorpus build_ground_truth(const std::vector<Instance>& corpus,
                                     const GroundTruthSpec& spec);

/// Lexicon predictor whose weights load exactly on the spec's inserted or
/// replaced words (positive for label-1 words, negative for label-0), so
/// the induced mechanism is known by construction.
LexiconPredictor induced_lexicon(const GroundTruthSpec& spec);

/// Fraction of ground-truth words ranked in the top |W| positions.
/// Throws std::invalid_argument when W is empty.
double gt_precision(const RankedImportance& ranks,
                    const std::vector<std::size_t>& gt_indices);

/// (L - best rank among ground-truth words + 1) / L; lower is better.
double gt_normalized_rank(const RankedImportance& ranks,
                          const std::vector<std::size_t>& gt_indices);

// ---------------------------------------------------------------------------
// Polarity alignment

/// Word -> polarity score in [0, 1]; construction validates the range.
class PolarityLexicon {
 public:
  explicit PolarityLexicon(std::map<std::string, double> scores);

  const std::map<std::string, double>& scores() const { return scores_; }
  std::optional<double> lookup(const std::string& word) const;

 private:
  std::map<std::string, double> scores_;
};

/// Spearman correlation between attribution values and per-word polarity
/// scores over the lexicon-covered features; absent when fewer than two
/// features are covered or a side has zero rank variance. Callers should
/// skip magnitude-only explainers whose values carry no sign.
std::optional<double> polarity_alignment(const Attribution& e,
                                         const Instance& x,
                                         const PolarityLexicon& lexicon);

}  // namespace attrbeam
