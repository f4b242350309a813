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

#include "socsens/sensors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "socsens/domtree.hpp"
#include "socsens/rng.hpp"

namespace socsens {

namespace {

void require_k(std::size_t k) {
  if (k == 0) throw std::invalid_argument("sensor set size k must be >= 1");
}

void require_dendrograms(std::span<const Dendrogram> dens) {
  if (dens.empty()) throw std::invalid_argument("no dendrograms");
  for (const auto& d : dens) {
    if (d.node_count() != dens.front().node_count()) {
      throw std::invalid_argument("dendrograms cover different node counts");
    }
  }
}

// Exact per-node sums; the mean is taken once at the end.
struct Accumulator {
  std::vector<std::int64_t> sum;
  std::vector<std::size_t> hits;

  explicit Accumulator(std::size_t n) : sum(n, 0), hits(n, 0) {}

  void add(NodeId v, std::int64_t value) {
    sum[v] += value;
    ++hits[v];
  }

  std::vector<NodeScore> scores() const {
    std::vector<NodeScore> out;
    for (NodeId v = 0; v < sum.size(); ++v) {
      if (hits[v] == 0) continue;
      out.push_back({v, static_cast<double>(sum[v]) / static_cast<double>(hits[v]),
                     hits[v]});
    }
    return out;
  }
};

std::string format_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string heuristic_params(std::size_t k, const HeuristicOptions& o) {
  return "k=" + std::to_string(k) + ";eps0=" + format_double(o.eps0) +
         ";time=" + (o.time == TimeMeasure::depth ? "depth" : "day") +
         ";filter=" + (o.filter == CandidateFilter::hit_rate ? "hit-rate" : "depth");
}

SensorSet select_by_scores(std::vector<NodeScore> scores,
                           std::span<const Dendrogram> dens, std::size_t k,
                           const HeuristicOptions& opts, std::string strategy) {
  const double runs = static_cast<double>(dens.size());
  std::erase_if(scores, [&](const NodeScore& s) {
    return opts.filter == CandidateFilter::hit_rate
               ? static_cast<double>(s.hit_count) / runs < opts.eps0
               : s.t_inf < opts.eps0;
  });
  sort_by_infection_time(scores);

  SensorSet out;
  out.strategy = std::move(strategy);
  out.params = heuristic_params(k, opts);
  out.k = k;
  const std::size_t take = std::min(k, scores.size());
  for (std::size_t i = 0; i < take; ++i) out.members.push_back(scores[i].node);
  out.status = take < k ? SelectionStatus::shortfall : SelectionStatus::ok;
  out.coverage = estimate_coverage(out.members, dens);
  return out;
}

std::vector<NodeId> top_neighbors(const ContactNetwork& net, NodeId v,
                                  std::size_t count,
                                  const std::vector<std::uint64_t>& strength) {
  std::vector<NodeId> nbrs;
  for (const auto& inc : net.incident(v)) nbrs.push_back(inc.neighbor);
  std::sort(nbrs.begin(), nbrs.end());
  nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  const auto take = std::min(count, nbrs.size());
  std::partial_sort(nbrs.begin(), nbrs.begin() + static_cast<std::ptrdiff_t>(take),
                    nbrs.end(), [&](NodeId a, NodeId b) {
                      if (strength[a] != strength[b]) return strength[a] > strength[b];
                      return a < b;
                    });
  nbrs.resize(take);
  return nbrs;
}

SensorSet nominate(const ContactNetwork& net, std::size_t k,
                   std::size_t sample_size, std::size_t nominations,
                   std::uint64_t seed, const std::vector<std::uint64_t>& strength,
                   std::string strategy) {
  require_k(k);
  if (sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
  if (nominations < 1) throw std::invalid_argument("K must be >= 1");
  const auto n = static_cast<std::uint32_t>(net.node_count());

  Rng rng(seed);
  const auto respondents = rng.sample(n, n);
  std::vector<bool> chosen(n, false);
  SensorSet out;
  out.strategy = std::move(strategy);
  out.params = "k=" + std::to_string(k) + ";sample=" + std::to_string(sample_size) +
               ";K=" + std::to_string(nominations);
  out.k = k;
  for (std::size_t asked = 0; asked < respondents.size(); ++asked) {
    if (asked >= sample_size && out.members.size() >= k) break;
    for (NodeId w : top_neighbors(net, respondents[asked], nominations, strength)) {
      if (!chosen[w]) {
        chosen[w] = true;
        out.members.push_back(w);
      }
    }
  }
  if (out.members.size() > k) out.members.resize(k);
  out.status = out.members.size() < k ? SelectionStatus::shortfall : SelectionStatus::ok;
  return out;
}

}  // namespace

double estimate_coverage(std::span<const NodeId> sensors,
                         std::span<const Dendrogram> dens) {
  if (dens.empty()) throw std::invalid_argument("no dendrograms");
  std::size_t covered = 0;
  for (const auto& d : dens) {
    covered += std::any_of(sensors.begin(), sensors.end(),
                           [&](NodeId v) { return v < d.node_count() && d.infected(v); });
  }
  return static_cast<double>(covered) / static_cast<double>(dens.size());
}

std::vector<NodeScore> transmission_scores(std::span<const Dendrogram> dens,
                                           TimeMeasure time) {
  require_dendrograms(dens);
  Accumulator acc(dens.front().node_count());
  for (const auto& d : dens) {
    if (time == TimeMeasure::calendar_day) {
      for (NodeId v = 0; v < d.node_count(); ++v) {
        if (d.infected(v)) acc.add(v, d.infection_day[v]);
      }
    } else {
      const auto depth = d.depths();
      for (NodeId v = 0; v < d.node_count(); ++v) {
        if (depth[v] >= 0) acc.add(v, depth[v]);
      }
    }
  }
  return acc.scores();
}

std::vector<NodeScore> dominator_scores(std::span<const Dendrogram> dens) {
  require_dendrograms(dens);
  Accumulator acc(dens.front().node_count());
  for (const auto& d : dens) {
    const auto tree = build_from_dendrogram(d);
    for (NodeId v = 0; v < d.node_count(); ++v) {
      if (tree.reachable(v)) acc.add(v, tree.depth[v] - 1);
    }
  }
  return acc.scores();
}

void sort_by_infection_time(std::vector<NodeScore>& scores) {
  std::sort(scores.begin(), scores.end(), [](const NodeScore& a, const NodeScore& b) {
    if (a.t_inf != b.t_inf) return a.t_inf < b.t_inf;
    if (a.hit_count != b.hit_count) return a.hit_count > b.hit_count;
    return a.node < b.node;
  });
}

SensorSet select_tt(std::span<const Dendrogram> dens, std::size_t k,
                    const HeuristicOptions& opts) {
  require_k(k);
  return select_by_scores(transmission_scores(dens, opts.time), dens, k, opts, "tt");
}

SensorSet select_dt(std::span<const Dendrogram> dens, std::size_t k,
                    const HeuristicOptions& opts) {
  require_k(k);
  auto scores = opts.time == TimeMeasure::depth
                    ? dominator_scores(dens)
                    : transmission_scores(dens, TimeMeasure::calendar_day);
  return select_by_scores(std::move(scores), dens, k, opts, "dt");
}

SensorSet select_topk_degree(const ContactNetwork& net, std::size_t k,
                             std::size_t sample_size, std::size_t nominations,
                             std::uint64_t seed) {
  std::vector<std::uint64_t> degree(net.node_count());
  for (NodeId v = 0; v < degree.size(); ++v) degree[v] = net.degree(v);
  return nominate(net, k, sample_size, nominations, seed, degree, "topk");
}

SensorSet select_weighted_degree(const ContactNetwork& net, std::size_t k,
                                 std::size_t sample_size, std::size_t nominations,
                                 std::uint64_t seed) {
  std::vector<std::uint64_t> weight(net.node_count());
  for (NodeId v = 0; v < weight.size(); ++v) weight[v] = net.weighted_degree(v);
  return nominate(net, k, sample_size, nominations, seed, weight, "wd");
}

SensorSet select_random(std::size_t node_count, std::size_t k, std::uint64_t seed) {
  require_k(k);
  if (k > node_count) throw std::invalid_argument("k exceeds population size");
  Rng rng(seed);
  SensorSet out;
  out.strategy = "random";
  out.params = "k=" + std::to_string(k);
  out.k = k;
  out.members = rng.sample(static_cast<std::uint32_t>(node_count),
                           static_cast<std::uint32_t>(k));
  return out;
}

SensorSet select_greedy_mait(std::span<const Dendrogram> dens, std::size_t k,
                             double eps) {
  require_k(k);
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in [0, 1]");
  auto scores = transmission_scores(dens);
  sort_by_infection_time(scores);

  SensorSet out;
  out.strategy = "greedy";
  out.params = "k=" + std::to_string(k) + ";eps=" + format_double(eps);
  out.k = k;
  std::vector<bool> covered(dens.size(), false);
  std::size_t covered_count = 0;
  double t_sum = 0.0;
  const double runs = static_cast<double>(dens.size());
  auto coverage = [&] { return static_cast<double>(covered_count) / runs; };
  for (const auto& s : scores) {
    if (out.members.size() >= k && coverage() >= eps) break;
    out.members.push_back(s.node);
    t_sum += s.t_inf;
    for (std::size_t i = 0; i < dens.size(); ++i) {
      if (!covered[i] && dens[i].infected(s.node)) {
        covered[i] = true;
        ++covered_count;
      }
    }
  }
  out.coverage = coverage();
  if (!out.members.empty()) out.mean_t_inf = t_sum / static_cast<double>(out.members.size());
  out.status = (coverage() >= eps && out.members.size() >= k) ? SelectionStatus::ok
                                                              : SelectionStatus::shortfall;
  return out;
}

void write_sensor_set(const SensorSet& s, std::ostream& out) {
  out << s.strategy << ',' << s.params << '\n';
  for (NodeId v : s.members) out << v << '\n';
}

SensorSet read_sensor_set(std::istream& in) {
  SensorSet s;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty sensor set file");
  const auto comma = line.find(',');
  if (comma == std::string::npos) throw std::runtime_error("sensor set header lacks ','");
  s.strategy = line.substr(0, comma);
  s.params = line.substr(comma + 1);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    s.members.push_back(static_cast<NodeId>(std::stoul(line)));
  }
  s.k = s.members.size();
  return s;
}

}  // namespace socsens
