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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "socsens/graph.hpp"
#include "socsens/rng.hpp"

namespace socsens {

namespace {

Gender draw_gender(Rng& rng) {
  return rng.bernoulli(0.5) ? Gender::male : Gender::female;
}

// Rounds x up or down with probability given by its fractional part.
std::size_t stochastic_round(double x, Rng& rng) {
  if (x <= 0.0) return 0;
  const double fl = std::floor(x);
  return static_cast<std::size_t>(fl) + (rng.uniform() < x - fl ? 1 : 0);
}

// Pairs up the half-edges of `members` uniformly at random. Self pairings are
// dropped, parallel edges are kept.
template <typename DurationFn>
void match_stubs(const std::vector<NodeId>& members,
                 const std::vector<std::size_t>& counts, Rng& rng,
                 DurationFn&& draw, std::vector<ContactEdge>& edges) {
  std::vector<NodeId> stubs;
  for (std::size_t i = 0; i < members.size(); ++i) {
    stubs.insert(stubs.end(), counts[i], members[i]);
  }
  rng.shuffle(stubs);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    if (stubs[i] == stubs[i + 1]) continue;
    auto [duration, type] = draw(rng);
    edges.push_back({stubs[i], stubs[i + 1], duration, type});
  }
}

}  // namespace

ContactNetwork generate_starlike(std::size_t n, double hub_fraction,
                                 std::uint64_t seed) {
  if (n < 10) throw std::invalid_argument("generate_starlike: n must be >= 10");
  if (!(hub_fraction > 0.0 && hub_fraction < 0.1)) {
    throw std::invalid_argument("generate_starlike: hub_fraction must be in (0, 0.1)");
  }
  constexpr int kEdgesPerNode = 2;
  constexpr double kHubBias = 0.5;

  Rng rng(seed);
  const auto hubs = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::lround(hub_fraction * static_cast<double>(n))));

  std::vector<Demographics> nodes(n);
  for (auto& d : nodes) {
    d.age = static_cast<int>(rng.between(0, 90));
    d.gender = draw_gender(rng);
    d.income = static_cast<std::uint64_t>(rng.between(10000, 150000));
  }

  std::vector<ContactEdge> edges;
  edges.reserve(hubs * hubs / 2 + kEdgesPerNode * n);
  std::vector<NodeId> endpoints;  // each node once per incident edge
  auto add = [&](NodeId u, NodeId v) {
    const auto duration = static_cast<std::uint32_t>(rng.between(28800, 86400));
    const auto type = static_cast<MeetingType>(rng.between(1, 6));
    edges.push_back({u, v, duration, type});
    endpoints.push_back(u);
    endpoints.push_back(v);
  };
  for (NodeId u = 0; u < hubs; ++u) {
    for (NodeId v = u + 1; v < hubs; ++v) add(u, v);
  }
  for (auto v = static_cast<NodeId>(hubs); v < n; ++v) {
    NodeId chosen[kEdgesPerNode];
    for (int j = 0; j < kEdgesPerNode; ++j) {
      NodeId target;
      do {
        target = rng.bernoulli(kHubBias)
                     ? static_cast<NodeId>(rng.below(hubs))
                     : endpoints[rng.below(endpoints.size())];
      } while (j > 0 && std::find(chosen, chosen + j, target) != chosen + j);
      chosen[j] = target;
    }
    for (int j = 0; j < kEdgesPerNode; ++j) add(chosen[j], v);
  }
  return ContactNetwork(std::move(nodes), std::move(edges));
}

ContactNetwork generate_citylike(std::size_t n, double target_avg_degree,
                                 std::uint64_t seed) {
  if (n < 100) throw std::invalid_argument("generate_citylike: n must be >= 100");
  if (!(target_avg_degree >= 4.0)) {
    throw std::invalid_argument("generate_citylike: target_avg_degree must be >= 4");
  }
  constexpr std::size_t kSchoolSize = 300;
  constexpr std::size_t kWorkplaceSize = 80;

  Rng rng(seed);
  std::vector<Demographics> nodes;
  nodes.reserve(n);
  std::vector<std::vector<NodeId>> households;

  // Households: elderly singles/couples, or families of one or two adults
  // plus children aged 0-20.
  static const std::vector<double> kFamilySize = {0.12, 0.28, 0.22, 0.23, 0.15};
  while (nodes.size() < n) {
    std::vector<NodeId> members;
    auto add_person = [&](int age, std::uint64_t income) {
      if (nodes.size() >= n) return;
      members.push_back(static_cast<NodeId>(nodes.size()));
      nodes.push_back({age, draw_gender(rng), income});
    };
    if (rng.bernoulli(0.12)) {
      const auto size = rng.between(1, 2);
      for (int i = 0; i < size; ++i) {
        add_person(static_cast<int>(rng.between(65, 90)),
                   static_cast<std::uint64_t>(rng.between(10000, 60000)));
      }
    } else {
      const auto size = static_cast<int>(rng.weighted(kFamilySize)) + 1;
      const int adults = size == 1 ? 1 : 2;
      for (int i = 0; i < size; ++i) {
        if (i < adults) {
          add_person(static_cast<int>(rng.between(21, 64)),
                     static_cast<std::uint64_t>(rng.between(15000, 150000)));
        } else {
          add_person(static_cast<int>(rng.between(0, 20)), 0);
        }
      }
    }
    households.push_back(std::move(members));
  }

  std::vector<ContactEdge> edges;
  std::vector<std::size_t> home_degree(n, 0);
  for (const auto& h : households) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      home_degree[h[i]] = h.size() - 1;
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        edges.push_back({h[i], h[j],
                         static_cast<std::uint32_t>(rng.between(28800, 50400)),
                         MeetingType::home});
      }
    }
  }

  // Outside-home contact budget per person, split by setting. The split is
  // scaled so that the expected mean degree hits the target.
  enum Role { toddler, pupil, adult, elderly };
  auto role_of = [](int age) {
    if (age < 5) return toddler;
    if (age <= 20) return pupil;
    if (age < 65) return adult;
    return elderly;
  };
  struct Split {
    double group;      // school or work share
    double community;  // shop/visit/other share
  };
  static constexpr Split kSplit[] = {
      {0.0, 0.3}, {0.92, 0.08}, {0.3, 0.7}, {0.0, 0.6}};

  const double D = target_avg_degree;
  double home_total = 0.0, budget_total = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const auto& s = kSplit[role_of(nodes[v].age)];
    home_total += static_cast<double>(home_degree[v]);
    budget_total += std::max(D - static_cast<double>(home_degree[v]), 1.0) *
                    (s.group + s.community);
  }
  const double scale =
      std::max(D * static_cast<double>(n) - home_total, 0.0) / budget_total;

  std::vector<std::size_t> group_stubs(n), community_stubs(n);
  for (NodeId v = 0; v < n; ++v) {
    const auto& s = kSplit[role_of(nodes[v].age)];
    const double budget =
        scale * std::max(D - static_cast<double>(home_degree[v]), 1.0);
    group_stubs[v] = stochastic_round(budget * s.group * rng.uniform(0.8, 1.2), rng);
    community_stubs[v] =
        stochastic_round(budget * s.community * rng.uniform(0.8, 1.2), rng);
  }

  auto chunked = [&rng](std::vector<NodeId> people, std::size_t size) {
    rng.shuffle(people);
    std::vector<std::vector<NodeId>> groups;
    for (std::size_t i = 0; i < people.size(); i += size) {
      const auto end = std::min(people.size(), i + size);
      if (!groups.empty() && end - i < size / 2) {
        groups.back().insert(groups.back().end(), people.begin() + i, people.begin() + end);
      } else {
        groups.emplace_back(people.begin() + i, people.begin() + end);
      }
    }
    return groups;
  };
  std::vector<NodeId> pupils, workers;
  for (NodeId v = 0; v < n; ++v) {
    const auto r = role_of(nodes[v].age);
    if (r == pupil) pupils.push_back(v);
    if (r == adult) workers.push_back(v);
  }

  // Schools differ in daily hours and in how much classes mix.
  for (const auto& school : chunked(pupils, kSchoolSize)) {
    const double hours = rng.uniform(0.8, 1.5);
    const double mixing = rng.uniform(0.75, 1.25);
    std::vector<std::size_t> counts;
    for (NodeId v : school) {
      counts.push_back(stochastic_round(static_cast<double>(group_stubs[v]) * mixing, rng));
    }
    match_stubs(school, counts, rng,
                [hours](Rng& r) {
                  return std::pair{static_cast<std::uint32_t>(hours * r.uniform(16000, 24000)),
                                   MeetingType::school};
                },
                edges);
  }
  for (const auto& workplace : chunked(workers, kWorkplaceSize)) {
    std::vector<std::size_t> counts;
    for (NodeId v : workplace) counts.push_back(group_stubs[v]);
    match_stubs(workplace, counts, rng,
                [](Rng& r) {
                  return std::pair{static_cast<std::uint32_t>(r.between(3600, 32400)),
                                   MeetingType::work};
                },
                edges);
  }
  std::vector<NodeId> everyone(n);
  for (NodeId v = 0; v < n; ++v) everyone[v] = v;
  static constexpr MeetingType kCommunityTypes[] = {
      MeetingType::shop, MeetingType::visit, MeetingType::other};
  match_stubs(everyone, community_stubs, rng,
              [](Rng& r) {
                return std::pair{static_cast<std::uint32_t>(r.between(300, 7200)),
                                 kCommunityTypes[r.below(3)]};
              },
              edges);

  return ContactNetwork(std::move(nodes), std::move(edges));
}

}  // namespace socsens
