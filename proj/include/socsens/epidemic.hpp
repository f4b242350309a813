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

#ifndef SOCSENS_EPIDEMIC_HPP
#define SOCSENS_EPIDEMIC_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "socsens/graph.hpp"

namespace socsens {

enum class DiseaseKind { si, seir };

// Transmission parameters. `beta` is a hazard per second of contact, so the
// per-day infection probability across one meeting is 1 - exp(-beta * d).
// `alpha` (E -> I) and `gamma` (I -> R) are daily rates and unused for SI.
struct DiseaseModel {
  DiseaseKind kind = DiseaseKind::seir;
  double beta = 7e-7;
  double alpha = 0.5;
  double gamma = 0.25;

  static DiseaseModel si(double beta) { return {DiseaseKind::si, beta, 1.0, 1.0}; }
  static DiseaseModel seir(double beta, double alpha, double gamma) {
    return {DiseaseKind::seir, beta, alpha, gamma};
  }

  // Throws std::invalid_argument when a rate is not positive and finite.
  void validate() const;

  double contact_probability(std::uint32_t duration_seconds) const;
};

struct SimulationConfig {
  // Number of uniformly drawn initial infections; ignored when seed_nodes is
  // non-empty.
  std::size_t seed_count = 5;
  std::vector<NodeId> seed_nodes;
  int horizon = 200;  // days
  std::uint64_t rng_seed = 1;

  void validate(std::size_t node_count) const;
};

inline constexpr std::int32_t kNotInfected = -1;
inline constexpr NodeId kNoInfector = std::numeric_limits<NodeId>::max();

// Who infected whom in one run. Seeds have infection day 0 and no infector.
struct Dendrogram {
  std::vector<std::int32_t> infection_day;  // kNotInfected when never infected
  std::vector<NodeId> infector;             // kNoInfector for seeds and uninfected
  std::vector<NodeId> seed_nodes;

  std::size_t node_count() const noexcept { return infection_day.size(); }
  bool infected(NodeId v) const { return infection_day[v] != kNotInfected; }
  std::size_t infected_count() const;

  // Hop distance from the seed that started each node's chain, or -1.
  std::vector<std::int32_t> depths() const;

  friend bool operator==(const Dendrogram&, const Dendrogram&) = default;
};

// Daily infection counts for some population. Day 0 holds the initial
// infections, incident[0] = cumulative[0].
struct Epicurve {
  std::vector<double> cumulative;
  std::vector<double> incident;
  std::size_t population = 0;

  static Epicurve from_cumulative(std::vector<double> cumulative,
                                  std::size_t population);
  int horizon() const { return static_cast<int>(cumulative.size()) - 1; }

  friend bool operator==(const Epicurve&, const Epicurve&) = default;
};

struct SimulationResult {
  Dendrogram dendrogram;
  Epicurve epicurve;  // over all nodes
};

// Binds a model to a network; per-edge probabilities are computed once and the
// simulator is then reusable across runs and threads.
class Simulator {
 public:
  Simulator(const ContactNetwork& net, DiseaseModel model);

  SimulationResult run(const SimulationConfig& cfg) const;

  const ContactNetwork& network() const noexcept { return *net_; }
  const DiseaseModel& model() const noexcept { return model_; }

 private:
  const ContactNetwork* net_;
  DiseaseModel model_;
  std::vector<double> edge_probability_;
};

SimulationResult simulate(const ContactNetwork& net, const DiseaseModel& model,
                          const SimulationConfig& cfg);

struct Ensemble {
  std::vector<Dendrogram> dendrograms;
  Epicurve mean;
};

// Independent runs; run i draws from run_seed(cfg.rng_seed, i). Results do
// not depend on the number of worker threads.
Ensemble run_ensemble(const ContactNetwork& net, const DiseaseModel& model,
                      const SimulationConfig& cfg, std::size_t runs);

// Cumulative infections over all nodes, days 0..horizon.
Epicurve epicurve_of(const Dendrogram& d, int horizon);

// `node infection_day infector_or_-1` for infected nodes in id order.
void write_dendrogram(const Dendrogram& d, std::ostream& out);
// `day,cumulative,incident` with a header row.
void write_epicurve_csv(const Epicurve& c, std::ostream& out);

}  // namespace socsens

#endif  // SOCSENS_EPIDEMIC_HPP
