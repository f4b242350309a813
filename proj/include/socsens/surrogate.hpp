// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOCSENS_SURROGATE_HPP
#define SOCSENS_SURROGATE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "socsens/decision_tree.hpp"
#include "socsens/epidemic.hpp"
#include "socsens/graph.hpp"

namespace socsens {

// Per-person features that can be collected by survey, without knowing the
// contact network itself.
enum Feature : std::size_t {
  kAge,
  kGender,
  kIncome,
  kMeetingCount,
  kTotalDuration,
  kLongMeetingCount,
  kHomeCount,  // counts of meeting types 1-5
  kWorkCount,
  kShopCount,
  kVisitCount,
  kSchoolCount,
  kHomePercent,  // percentages of meeting types 1-5
  kWorkPercent,
  kShopPercent,
  kVisitPercent,
  kSchoolPercent,
  kFeatureCount,
};

const char* feature_name(std::size_t feature);
std::span<const std::size_t> demographic_features();
std::span<const std::size_t> interaction_features();

inline constexpr std::uint32_t kDefaultLongMeeting = 20000;  // seconds

// One row per node, kFeatureCount wide. A meeting is long when its duration
// exceeds `long_threshold`.
std::vector<FeatureRow> extract_features(const ContactNetwork& net,
                                         std::uint32_t long_threshold = kDefaultLongMeeting);

struct SurrogateCriteria {
  int age_min = 5;
  int age_max = 20;
  double long_fraction_min = 0.8;
  std::vector<MeetingType> required_types{MeetingType::work, MeetingType::school};
  double type_fraction_min = 0.8;

  // Throws std::invalid_argument on an empty age range, fractions outside
  // [0, 1], or a required type outside 1-5.
  void validate() const;
};

// `key = value` lines: age_min, age_max, long_fraction_min, required_types
// (comma separated codes), type_fraction_min. '#' starts a comment.
SurrogateCriteria parse_criteria(std::istream& in);

// Nodes satisfying every criterion, ascending.
std::vector<NodeId> apply_criteria(std::span<const FeatureRow> features,
                                   const SurrogateCriteria& criteria);

struct FeatureDivergence {
  std::size_t feature = 0;
  double distance = 0.0;  // total variation between histograms
};

// Features ordered by how differently they are distributed in `sensors` and
// `reference` (20 equal-width bins over the population range), largest first.
std::vector<FeatureDivergence> rank_features(std::span<const FeatureRow> features,
                                             std::span<const NodeId> sensors,
                                             std::span<const NodeId> reference,
                                             std::span<const std::size_t> candidates);

// k nodes with the largest histogram log-likelihood ratio (sensor vs.
// reference) summed over `selected` features. Ties are broken by a seeded
// shuffle.
std::vector<NodeId> select_by_distribution(std::span<const FeatureRow> features,
                                           std::span<const NodeId> sensors,
                                           std::span<const NodeId> reference,
                                           std::span<const std::size_t> selected,
                                           std::size_t k, std::uint64_t seed);

// k nodes with the highest leaf probability, ties broken by a seeded shuffle.
std::vector<NodeId> select_by_tree(const DecisionTree& tree,
                                   std::span<const FeatureRow> features,
                                   std::size_t k, std::uint64_t seed);

// Positives and negatives stacked into a training set.
struct TrainingSet {
  std::vector<FeatureRow> rows;
  std::vector<std::uint8_t> labels;
};
TrainingSet make_training_set(std::span<const FeatureRow> features,
                              std::span<const NodeId> positives,
                              std::span<const NodeId> negatives);

// Uniform sample of `count` nodes that are not in `excluded`.
std::vector<NodeId> sample_negatives(std::size_t node_count,
                                     std::span<const NodeId> excluded,
                                     std::size_t count, std::uint64_t seed);

enum class Heuristic { tt, dt };

struct RefineOptions {
  std::vector<double> rates;  // beta values, per second of contact
  Heuristic strategy = Heuristic::dt;
  double train_fraction = 0.01;
  std::uint64_t rng_seed = 1;
  DiseaseModel model;  // kind, alpha and gamma; beta replaced per rate
  std::size_t runs = 50;
  std::size_t seed_count = 5;
  int horizon = 200;
  double eps0 = 0.1;
  TreeParams tree;
};

enum class RefineStatus { ok, empty };

struct RefineResult {
  std::vector<NodeId> members;  // ascending, subset of the candidates
  std::vector<std::size_t> per_model_positive;
  RefineStatus status = RefineStatus::ok;
};

// Candidates every tree classifies as positive.
RefineResult intersect_predictions(std::span<const NodeId> candidates,
                                   std::span<const FeatureRow> features,
                                   std::span<const DecisionTree> trees);

// One tree per transmission rate, trained on heuristic sensors (positives)
// against a fresh uniform sample (negatives); the refined set is the
// candidates accepted by all trees.
RefineResult refine_surrogates(const ContactNetwork& net,
                               std::span<const FeatureRow> features,
                               std::span<const NodeId> candidates,
                               const RefineOptions& opts);

struct TierOptions {
  std::size_t runs = 100;
  std::size_t seed_count = 5;
  int horizon = 200;
  double eps0 = 0.1;
  double train_fraction = 0.01;
  std::size_t min_cases = 10;
  std::uint64_t rng_seed = 1;
  TreeParams tree;
};

struct TierResult {
  std::string strategy;
  std::size_t size = 0;
  std::size_t ok_runs = 0;
  std::size_t failures = 0;
  double mean_lead = 0.0;
  double variance = 0.0;
};

// Lead time of sensor sets built from increasing amounts of information:
// demographic or interaction histograms, trees on either or both, and the
// network-based heuristics. Rows are distr-demo, distr-inter, tree-demo,
// tree-inter, tree-demo+inter, tt, dt.
std::vector<TierResult> compare_information_tiers(const ContactNetwork& net,
                                                  const DiseaseModel& model,
                                                  std::size_t k,
                                                  const TierOptions& opts);

void write_tiers_csv(std::span<const TierResult> tiers, std::ostream& out);

}  // namespace socsens

#endif  // SOCSENS_SURROGATE_HPP
