#include "attrbeam/lab.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "attrbeam/rng.hpp"

namespace attrbeam {

RankedImportance perturb_ranks(const RankedImportance& ranks, double s,
                               std::uint64_t seed) {
  if (s < 0.0) {
    throw std::invalid_argument("noise std must be nonnegative");
  }
  if (!is_rank_permutation(ranks.ranks)) {
    throw std::invalid_argument("ranks must be a permutation of 1..L");
  }
  Attribution noisy;
  noisy.values.resize(ranks.size());
  std::mt19937_64 gen(seed);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const double noise = s > 0.0 ? s * rng::normal(gen) : 0.0;
    noisy.values[i] = static_cast<double>(ranks.ranks[i]) + noise;
  }
  return ranked_importance(noisy);
}

AggregateMetrics aggregate_reports(const std::vector<MetricReport>& reports) {
  AggregateMetrics agg;
  agg.n = reports.size();
  if (reports.empty()) {
    return agg;
  }
  double rank_del_sum = 0.0, rank_ins_sum = 0.0;
  for (const MetricReport& r : reports) {
    agg.mean_comp += r.comp;
    agg.mean_suff += r.suff;
    agg.mean_delta += r.delta;
    agg.flip_rate += r.df_mit;
    agg.mean_df_frac += r.df_frac;
    if (r.rank_del) {
      rank_del_sum += *r.rank_del;
      ++agg.n_rank_del;
    }
    if (r.rank_ins) {
      rank_ins_sum += *r.rank_ins;
      ++agg.n_rank_ins;
    }
  }
  const double n = static_cast<double>(agg.n);
  agg.mean_comp /= n;
  agg.mean_suff /= n;
  agg.mean_delta /= n;
  agg.flip_rate /= n;
  agg.mean_df_frac /= n;
  if (agg.n_rank_del > 0) {
    agg.mean_rank_del = rank_del_sum / static_cast<double>(agg.n_rank_del);
  }
  if (agg.n_rank_ins > 0) {
    agg.mean_rank_ins = rank_ins_sum / static_cast<double>(agg.n_rank_ins);
  }
  return agg;
}

SweepResult perturbation_sweep(
    const std::vector<Instance>& instances, const Predictor& pred,
    const std::vector<std::pair<std::string, std::vector<Attribution>>>&
        explainer_outputs,
    const std::vector<double>& s_grid, std::size_t trials,
    std::uint64_t seed) {
  if (s_grid.empty()) {
    throw std::invalid_argument("perturbation sweep needs a non-empty s grid");
  }
  if (trials == 0) {
    throw std::invalid_argument("perturbation sweep needs trials >= 1");
  }
  SweepResult result;
  for (std::size_t e_idx = 0; e_idx < explainer_outputs.size(); ++e_idx) {
    const auto& [name, attributions] = explainer_outputs[e_idx];
    if (attributions.size() != instances.size()) {
      throw std::invalid_argument("attribution count does not match corpus");
    }
    std::vector<RankedImportance> base(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
      base[i] = ranked_importance(attributions[i]);
    }
    for (std::size_t s_idx = 0; s_idx < s_grid.size(); ++s_idx) {
      const double s = s_grid[s_idx];
      const std::uint64_t stream = rng::derive_seed(seed, e_idx, s_idx);
      // The s = 0 column is exact, one pass suffices.
      const std::size_t rounds = s == 0.0 ? 1 : trials;
      std::vector<MetricReport> reports;
      reports.reserve(rounds * instances.size());
      CrossingRecord crossing{name, s, {}, {}};
      for (std::size_t t = 0; t < rounds; ++t) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
          const RankedImportance perturbed =
              perturb_ranks(base[i], s, rng::derive_seed(stream, t, i));
          if (t == 0 && i == 0) {
            crossing.original = base[i].ranks;
            crossing.perturbed = perturbed.ranks;
          }
          Attribution as_values;
          as_values.values.assign(perturbed.ranks.begin(),
                                  perturbed.ranks.end());
          reports.push_back(
              evaluate_metrics(instances[i], as_values, pred));
        }
      }
      result.rows.push_back({name, s, aggregate_reports(reports)});
      result.crossings.push_back(std::move(crossing));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Ground truth

GroundTruthSpec default_ground_truth_spec(GtType type, GtSymmetry symmetry,
                                          std::uint64_t seed) {
  GroundTruthSpec spec;
  spec.type = type;
  spec.symmetry = symmetry;
  spec.seed = seed;
  switch (type) {
    case GtType::short_addition:
      spec.insertion_sets[0] = {
          {"terrible"}, {"awful"}, {"disaster"}, {"worst"}, {"never"}};
      spec.insertion_sets[1] = {
          {"excellent"}, {"great"}, {"fantastic"}, {"brilliant"},
          {"enjoyable"}};
      break;
    case GtType::long_addition:
      spec.insertion_sets[0] = {
          {"A", "total", "waste", "of", "time", "."},
          {"Not", "worth", "the", "money", "!"},
          {"Is", "it", "even", "a", "real", "film", "?"},
          {"Overall", "it", "looks", "cheap", "."}};
      spec.insertion_sets[1] = {
          {"I", "like", "this", "movie", "."},
          {"This", "is", "a", "great", "movie", "!"},
          {"Such", "a", "beautiful", "work", "."},
          {"Surely", "recommend", "it", "!"}};
      break;
    case GtType::replacement:
      spec.replacement_sets = {
          {{"a", "an", "the"}, "a", "the"},
          {{"in", "on", "at"}, "in", "on"},
          {{"I", "you"}, "I", "you"},
          {{"he", "she"}, "he", "she"},
          {{"can", "will", "may"}, "can", "may"},
          {{"could", "would", "might"}, "could", "might"},
          {{"am", "is", "are", "was", "were", "be", "been", "being"}, "is",
           "are"},
          {{".", ",", "!", "?", ";", ":", "..."}, ".", ","}};
      break;
  }
  return spec;
}

namespace {

const ReplacementSet* find_set(const std::vector<ReplacementSet>& sets,
                               const std::string& word) {
  for (const ReplacementSet& set : sets) {
    if (std::find(set.words.begin(), set.words.end(), word) !=
        set.words.end()) {
      return &set;
    }
  }
  return nullptr;
}

}  // namespace

GroundTruthCorpus build_ground_truth(const std::vector<Instance>& corpus,
                                     const GroundTruthSpec& spec) {
  const bool addition = spec.type != GtType::replacement;
  if (addition) {
    std::vector<int> required_labels =
        spec.symmetry == GtSymmetry::symmetric ? std::vector<int>{0, 1}
                                               : std::vector<int>{1};
    for (int label : required_labels) {
      auto it = spec.insertion_sets.find(label);
      if (it == spec.insertion_sets.end() || it->second.empty()) {
        throw std::invalid_argument("empty insertion set for label " +
                                    std::to_string(label));
      }
    }
  }

  std::mt19937_64 gen(spec.seed);
  GroundTruthCorpus out;
  out.items.reserve(corpus.size());
  for (const Instance& x : corpus) {
    if (x.kind() != InstanceKind::text) {
      throw std::invalid_argument(
          "ground-truth construction expects text instances");
    }
    GroundTruthInstance item{x, 0, {}, false, "unchanged"};
    item.label = static_cast<int>(rng::below(gen, 2));
    const bool modify =
        spec.symmetry == GtSymmetry::symmetric || item.label == 1;

    if (addition) {
      if (!modify) {
        item.excluded = true;  // no ground-truth words were added
        out.items.push_back(std::move(item));
        continue;
      }
      const auto& blocks = spec.insertion_sets.at(item.label);
      const auto& block = blocks[rng::below(gen, blocks.size())];
      const bool at_begin = rng::below(gen, 2) == 0;
      std::vector<Feature> features = x.features();
      const std::size_t offset = at_begin ? 0 : features.size();
      std::vector<Feature> inserted;
      inserted.reserve(block.size());
      for (const std::string& token : block) {
        inserted.push_back(Feature::token(token));
      }
      features.insert(features.begin() + static_cast<std::ptrdiff_t>(offset),
                      inserted.begin(), inserted.end());
      for (std::size_t j = 0; j < block.size(); ++j) {
        item.gt_indices.push_back(offset + j);
      }
      item.instance = Instance::reduced(std::move(features),
                                        InstanceKind::text);
      item.provenance = (spec.type == GtType::short_addition
                             ? std::string("short_addition")
                             : std::string("long_addition")) +
                        (at_begin ? "@begin" : "@end");
    } else {
      std::vector<Feature> features = x.features();
      if (modify) {
        for (Feature& f : features) {
          const ReplacementSet* set = find_set(spec.replacement_sets, f.value);
          if (set != nullptr) {
            f.value = item.label == 1 ? set->target1 : set->target0;
          }
        }
        item.provenance = "replacement";
      }
      // Ground-truth words are all members of any replacement set, whether
      // or not their surface changed.
      for (std::size_t i = 0; i < features.size(); ++i) {
        if (find_set(spec.replacement_sets, features[i].value) != nullptr) {
          item.gt_indices.push_back(i);
        }
      }
      item.excluded = item.gt_indices.empty();
      item.instance = Instance::reduced(std::move(features),
                                        InstanceKind::text);
    }
    out.items.push_back(std::move(item));
  }
  return out;
}

LexiconPredictor induced_lexicon(const GroundTruthSpec& spec) {
  std::unordered_map<std::string, double> weights;
  if (spec.type == GtType::replacement) {
    for (const ReplacementSet& set : spec.replacement_sets) {
      weights[set.target1] += 1.0;
      weights[set.target0] -= 1.0;
    }
  } else {
    const double scale = spec.type == GtType::short_addition ? 2.0 : 1.0;
    for (const auto& [label, blocks] : spec.insertion_sets) {
      const double sign = label == 1 ? 1.0 : -1.0;
      for (const auto& block : blocks) {
        for (const std::string& token : block) {
          weights[token] += sign * scale;
        }
      }
    }
  }
  return LexiconPredictor(std::move(weights), 0.0);
}

double gt_precision(const RankedImportance& ranks,
                    const std::vector<std::size_t>& gt_indices) {
  if (gt_indices.empty()) {
    throw std::invalid_argument("ground-truth word set is empty");
  }
  const std::size_t n = ranks.size();
  std::size_t hits = 0;
  for (std::size_t w : gt_indices) {
    if (w >= n) {
      throw std::out_of_range("ground-truth index outside instance");
    }
    if (static_cast<std::size_t>(ranks.ranks[w]) > n - gt_indices.size()) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(gt_indices.size());
}

double gt_normalized_rank(const RankedImportance& ranks,
                          const std::vector<std::size_t>& gt_indices) {
  if (gt_indices.empty()) {
    throw std::invalid_argument("ground-truth word set is empty");
  }
  const std::size_t n = ranks.size();
  int lowest = static_cast<int>(n) + 1;
  for (std::size_t w : gt_indices) {
    if (w >= n) {
      throw std::out_of_range("ground-truth index outside instance");
    }
    lowest = std::min(lowest, ranks.ranks[w]);
  }
  return (static_cast<double>(n) - static_cast<double>(lowest) + 1.0) /
         static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Polarity alignment

PolarityLexicon::PolarityLexicon(std::map<std::string, double> scores)
    : scores_(std::move(scores)) {
  for (const auto& [word, value] : scores_) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw std::invalid_argument("polarity score for '" + word +
                                  "' outside [0, 1]");
    }
  }
}

std::optional<double> PolarityLexicon::lookup(const std::string& word) const {
  auto it = scores_.find(word);
  if (it == scores_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<double> polarity_alignment(const Attribution& e,
                                         const Instance& x,
                                         const PolarityLexicon& lexicon) {
  if (e.size() != x.size()) {
    throw std::invalid_argument(
        "attribution length does not match instance length");
  }
  std::vector<double> values, polarity;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto p = lexicon.lookup(x[i].key())) {
      values.push_back(e.values[i]);
      polarity.push_back(*p);
    }
  }
  if (values.size() < 2) {
    return std::nullopt;
  }
  return spearman(values, polarity);
}

}  // namespace attrbeam
