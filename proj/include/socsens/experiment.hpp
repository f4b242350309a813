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

#ifndef SOCSENS_EXPERIMENT_HPP
#define SOCSENS_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "socsens/epicurve.hpp"
#include "socsens/epidemic.hpp"
#include "socsens/graph.hpp"
#include "socsens/sensors.hpp"
#include "socsens/surrogate.hpp"

namespace socsens {

struct NetworkSource {
  std::string path;  // takes precedence over the generator when set
  NetworkFormat format = NetworkFormat::attributed;
  std::string generator = "citylike";  // "citylike" or "starlike"
  std::size_t nodes = 20000;
  double hub_fraction = 0.02;
  double avg_degree = 50.0;
  std::uint64_t seed = 1;

  std::string label() const;
};

struct ExperimentConfig {
  NetworkSource network;
  DiseaseModel model;
  std::vector<std::string> strategies{"topk", "wd", "tt", "dt"};
  double k = 0.05;  // below 1 a fraction of N, otherwise a node count
  double eps = 0.8;
  double eps0 = 0.1;
  std::size_t runs = 200;
  std::vector<std::size_t> seed_counts{1, 5, 10};
  int horizon = 200;
  std::uint64_t rng_seed = 1;
  std::size_t nominations = 3;  // friends named per respondent
  std::size_t min_cases = 10;
  TimeMeasure time = TimeMeasure::depth;
  CandidateFilter filter = CandidateFilter::hit_rate;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
  std::size_t resolve_k(std::size_t node_count) const;
  HeuristicOptions heuristic() const { return {eps0, time, filter}; }
};

ContactNetwork load_or_generate(const NetworkSource& src);

bool is_known_strategy(const std::string& name);

// Dendrogram-based strategies read `train`; the others only the network.
SensorSet select_strategy(const std::string& name, const ContactNetwork& net,
                          std::span<const Dendrogram> train, std::size_t k,
                          const ExperimentConfig& cfg, std::uint64_t seed);

struct LeadRow {
  std::string network;
  std::string strategy;
  std::size_t seeds = 0;
  std::size_t runs = 0;
  std::size_t ok_runs = 0;
  std::size_t failures = 0;
  double mean_lead = 0.0;
  double variance = 0.0;  // NaN with fewer than two successful runs
};

// Selection on a training ensemble, measurement on a disjoint evaluation
// ensemble, one row per seed count and strategy.
std::vector<LeadRow> run_leadtime(const ContactNetwork& net,
                                  const ExperimentConfig& cfg);
void write_leadtime_csv(std::span<const LeadRow> rows, std::ostream& out);

struct FanoRow {
  double fraction = 0.0;
  std::size_t k = 0;
  std::size_t ok_runs = 0;
  double mean_lead = 0.0;
  double variance = 0.0;
  double inverse_fano = 0.0;
};

// Lead dispersion of the first configured strategy across sensor set sizes.
std::vector<FanoRow> run_fano(const ContactNetwork& net, const ExperimentConfig& cfg,
                              std::span<const double> fractions);
void write_fano_csv(std::span<const FanoRow> rows, std::ostream& out);

StabilityCurve run_stability(const ContactNetwork& net, const ExperimentConfig& cfg,
                             std::span<const int> windows, double tolerance = 1.0);
void write_stability_csv(const StabilityCurve& curve, std::ostream& out);

struct PredictReport {
  std::vector<double> sensor_mean;
  std::vector<double> random_mean;
  PolyPrediction fit;
};

// Cubic map from the sensor group's ensemble-mean curve to the random
// group's, trained on the first half of the horizon.
PredictReport run_predict(const ContactNetwork& net, const ExperimentConfig& cfg);
void write_predict_csv(const PredictReport& r, std::ostream& out);

struct SurrogateReport {
  std::vector<NodeId> criteria_set;
  RefineResult refined;
  std::size_t dt_size = 0;
  LeadRow surrogate_lead;
  LeadRow dt_lead;
};

SurrogateReport run_surrogate(const ContactNetwork& net, const ExperimentConfig& cfg,
                              const SurrogateCriteria& criteria,
                              std::span<const double> rates);
void write_surrogate_csv(const SurrogateReport& r, std::ostream& out);

std::vector<TierResult> run_tiers(const ContactNetwork& net, const ExperimentConfig& cfg);

}  // namespace socsens

#endif  // SOCSENS_EXPERIMENT_HPP
