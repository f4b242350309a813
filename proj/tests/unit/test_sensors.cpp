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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "socsens/epidemic.hpp"
#include "socsens/sensors.hpp"

namespace socsens {
namespace {

Dendrogram make_dendrogram(std::size_t n,
                           std::vector<std::tuple<NodeId, int, NodeId>> infected) {
  Dendrogram d;
  d.infection_day.assign(n, kNotInfected);
  d.infector.assign(n, kNoInfector);
  for (auto [v, day, by] : infected) {
    d.infection_day[v] = day;
    d.infector[v] = by;
    if (by == kNoInfector) d.seed_nodes.push_back(v);
  }
  return d;
}

std::vector<Dendrogram> small_ensemble() {
  // Node 0 seeds both runs; node 1 is always a child of 0; node 3 sits deep.
  return {make_dendrogram(5, {{0, 0, kNoInfector}, {1, 1, 0}, {2, 2, 1}, {3, 3, 2}}),
          make_dendrogram(5, {{0, 0, kNoInfector}, {1, 2, 0}, {3, 3, 1}, {4, 0, kNoInfector}})};
}

std::vector<Dendrogram> simulated_ensemble(std::size_t runs) {
  const auto net = generate_citylike(1500, 20.0, 8);
  SimulationConfig cfg;
  cfg.horizon = 80;
  cfg.rng_seed = 4;
  return run_ensemble(net, DiseaseModel::seir(2e-6, 0.5, 0.25), cfg, runs).dendrograms;
}

TEST_CASE("transmission scores average depths over infected runs") {
  const auto ens = small_ensemble();
  std::map<NodeId, NodeScore> by_node;
  for (const auto& s : transmission_scores(ens)) by_node[s.node] = s;
  CHECK(by_node.size() == 5);
  CHECK(by_node[0].t_inf == 0.0);
  CHECK(by_node[0].hit_count == 2);
  CHECK(by_node[1].t_inf == 1.0);
  CHECK(by_node[3].t_inf == doctest::Approx(2.5));
  CHECK(by_node[4].hit_count == 1);
  std::map<NodeId, NodeScore> by_day;
  for (const auto& s : transmission_scores(ens, TimeMeasure::calendar_day)) by_day[s.node] = s;
  CHECK(by_day[1].t_inf == doctest::Approx(1.5));
}

TEST_CASE("tt orders by time, then hits, then id") {
  const auto ens = small_ensemble();
  const auto s = select_tt(ens, 5, {0.0});
  CHECK(s.members == std::vector<NodeId>{0, 4, 1, 2, 3});
  CHECK(s.status == SelectionStatus::ok);
  CHECK(*s.coverage == 1.0);
  // Nodes infected in under 60% of runs are dropped.
  const auto filtered = select_tt(ens, 5, {0.6});
  CHECK(filtered.members == std::vector<NodeId>{0, 1, 3});
  CHECK(filtered.status == SelectionStatus::shortfall);
  // Depth reading of the filter drops nodes shallower than eps0.
  HeuristicOptions by_depth{1.0, TimeMeasure::depth, CandidateFilter::average_depth};
  CHECK(select_tt(ens, 5, by_depth).members == std::vector<NodeId>{1, 2, 3});
  CHECK_THROWS(select_tt(ens, 0));
}

TEST_CASE("dominator and transmission trees agree on forests") {
  const auto ens = simulated_ensemble(30);
  auto tt = transmission_scores(ens);
  auto dt = dominator_scores(ens);
  REQUIRE(tt.size() == dt.size());
  for (std::size_t i = 0; i < tt.size(); ++i) {
    CHECK(tt[i].node == dt[i].node);
    CHECK(tt[i].t_inf == dt[i].t_inf);
    CHECK(tt[i].hit_count == dt[i].hit_count);
  }
  CHECK(select_tt(ens, 50).members == select_dt(ens, 50).members);
}

TEST_CASE("coverage matches a direct count") {
  const auto ens = simulated_ensemble(25);
  const std::vector<NodeId> sensors{3, 100, 700};
  std::size_t hit = 0;
  for (const auto& d : ens) {
    hit += d.infected(3) || d.infected(100) || d.infected(700);
  }
  CHECK(estimate_coverage(sensors, ens) == doctest::Approx(hit / 25.0));
  CHECK(estimate_coverage({}, ens) == 0.0);
}

TEST_CASE("greedy stops once coverage and size targets are met") {
  const auto ens = simulated_ensemble(25);
  const auto s = select_greedy_mait(ens, 10, 0.8);
  CHECK(s.status == SelectionStatus::ok);
  CHECK(s.members.size() >= 10);
  CHECK(*s.coverage >= 0.8);
  CHECK(estimate_coverage(s.members, ens) == *s.coverage);
  // Dropping the last member breaks one of the two targets.
  if (s.members.size() > 10) {
    std::vector<NodeId> fewer(s.members.begin(), s.members.end() - 1);
    CHECK(estimate_coverage(fewer, ens) < 0.8);
  }
  const auto tiny = small_ensemble();
  const auto impossible = select_greedy_mait(tiny, 10, 1.0);
  CHECK(impossible.status == SelectionStatus::shortfall);
  CHECK(impossible.members.size() == 5);
}

TEST_CASE("nomination strategies on a star") {
  std::vector<ContactEdge> edges;
  for (NodeId v = 1; v < 30; ++v) {
    edges.push_back({0, v, v == 7 ? 90000u : 10u, MeetingType::other});
  }
  edges.push_back({5, 6, 20, MeetingType::home});
  const ContactNetwork net(std::vector<Demographics>(30), std::move(edges));
  const auto topk = select_topk_degree(net, 1, 5, 1, 3);
  CHECK(topk.members == std::vector<NodeId>{0});
  // With one nomination each, only the hub names someone other than itself:
  // its strongest tie by duration (7) or by contact count (5, lowest id).
  auto sorted = [](std::vector<NodeId> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto wd = select_weighted_degree(net, 30, 30, 1, 3);
  CHECK(sorted(wd.members) == std::vector<NodeId>{0, 7});
  CHECK(wd.status == SelectionStatus::shortfall);
  CHECK(sorted(select_topk_degree(net, 30, 30, 1, 3).members) == std::vector<NodeId>{0, 5});
  const auto many = select_topk_degree(net, 30, 30, 3, 9);
  CHECK(std::set<NodeId>(many.members.begin(), many.members.end()).size() ==
        many.members.size());
  CHECK(many.members == select_topk_degree(net, 30, 30, 3, 9).members);
}

TEST_CASE("random selection") {
  const auto s = select_random(100, 40, 1);
  CHECK(s.members.size() == 40);
  CHECK(std::set<NodeId>(s.members.begin(), s.members.end()).size() == 40);
  CHECK(s.members == select_random(100, 40, 1).members);
  CHECK(s.members != select_random(100, 40, 2).members);
  CHECK_THROWS(select_random(10, 11, 1));
}

TEST_CASE("sensor set files round-trip") {
  const auto s = select_tt(small_ensemble(), 3, {0.0});
  std::stringstream buf;
  write_sensor_set(s, buf);
  const auto back = read_sensor_set(buf);
  CHECK(back.members == s.members);
  CHECK(back.strategy == "tt");
  CHECK(back.params == s.params);
}

}  // namespace
}  // namespace socsens
