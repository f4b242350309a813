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

#ifndef SOCSENS_SENSORS_HPP
#define SOCSENS_SENSORS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "socsens/epidemic.hpp"
#include "socsens/graph.hpp"

namespace socsens {

enum class SelectionStatus {
  ok,
  shortfall,  // fewer candidates than requested, or coverage target missed
};

struct SensorSet {
  std::vector<NodeId> members;  // selection order, no duplicates
  std::string strategy;
  std::string params;
  std::size_t k = 0;
  SelectionStatus status = SelectionStatus::ok;
  std::optional<double> coverage;     // f(S) on the selection dendrograms
  std::optional<double> mean_t_inf;   // greedy selection only
};

// Expected infection time of a node, averaged over the dendrograms in which it
// was infected.
struct NodeScore {
  NodeId node = 0;
  double t_inf = 0.0;
  std::size_t hit_count = 0;
};

// Which per-run quantity stands for "infection time".
enum class TimeMeasure {
  depth,         // hops from the seeds (default)
  calendar_day,  // simulated infection day
};

// What the eps0 cut is applied to.
enum class CandidateFilter {
  hit_rate,       // drop nodes infected in fewer than eps0 of the runs
  average_depth,  // drop nodes whose t_inf is below eps0
};

struct HeuristicOptions {
  double eps0 = 0.1;
  TimeMeasure time = TimeMeasure::depth;
  CandidateFilter filter = CandidateFilter::hit_rate;
};

// Fraction of dendrograms in which at least one member of S was infected.
double estimate_coverage(std::span<const NodeId> sensors,
                         std::span<const Dendrogram> dens);

// Scores from transmission-tree depths, in node order, for nodes infected at
// least once.
std::vector<NodeScore> transmission_scores(std::span<const Dendrogram> dens,
                                           TimeMeasure time = TimeMeasure::depth);
// Scores from depths in each dendrogram's dominator tree, the virtual source
// not counted as a level.
std::vector<NodeScore> dominator_scores(std::span<const Dendrogram> dens);

// Ascending t_inf, then more hits, then lower id.
void sort_by_infection_time(std::vector<NodeScore>& scores);

SensorSet select_tt(std::span<const Dendrogram> dens, std::size_t k,
                    const HeuristicOptions& opts = {});
SensorSet select_dt(std::span<const Dendrogram> dens, std::size_t k,
                    const HeuristicOptions& opts = {});

// Friend-of-friend nomination: respondents drawn uniformly without
// replacement each nominate their K highest-degree distinct neighbors. At
// least `sample_size` respondents are asked; more are drawn until k distinct
// nominees exist or everyone has been asked.
SensorSet select_topk_degree(const ContactNetwork& net, std::size_t k,
                             std::size_t sample_size, std::size_t nominations,
                             std::uint64_t seed);
// Same nomination scheme ranked by total meeting duration.
SensorSet select_weighted_degree(const ContactNetwork& net, std::size_t k,
                                 std::size_t sample_size, std::size_t nominations,
                                 std::uint64_t seed);

SensorSet select_random(std::size_t node_count, std::size_t k, std::uint64_t seed);

// Adds nodes in ascending t_inf until coverage reaches eps and the set holds
// at least k nodes.
SensorSet select_greedy_mait(std::span<const Dendrogram> dens, std::size_t k,
                             double eps);

// `strategy,params` header then one node id per line.
void write_sensor_set(const SensorSet& s, std::ostream& out);
SensorSet read_sensor_set(std::istream& in);

}  // namespace socsens

#endif  // SOCSENS_SENSORS_HPP
