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

#include "socsens/epidemic.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "socsens/parallel.hpp"
#include "socsens/rng.hpp"

namespace socsens {

void DiseaseModel::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(beta)) throw std::invalid_argument("beta must be positive");
  if (kind == DiseaseKind::seir && !(positive(alpha) && positive(gamma))) {
    throw std::invalid_argument("alpha and gamma must be positive for SEIR");
  }
}

double DiseaseModel::contact_probability(std::uint32_t duration_seconds) const {
  return -std::expm1(-beta * static_cast<double>(duration_seconds));
}

void SimulationConfig::validate(std::size_t node_count) const {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1 day");
  if (seed_nodes.empty()) {
    if (seed_count < 1 || seed_count > node_count) {
      throw std::invalid_argument("seed count must be in [1, N]");
    }
    return;
  }
  std::vector<bool> seen(node_count, false);
  for (NodeId v : seed_nodes) {
    if (v >= node_count) throw std::invalid_argument("seed node out of range");
    if (seen[v]) throw std::invalid_argument("duplicate seed node");
    seen[v] = true;
  }
}

std::size_t Dendrogram::infected_count() const {
  std::size_t c = 0;
  for (auto d : infection_day) c += d != kNotInfected;
  return c;
}

std::vector<std::int32_t> Dendrogram::depths() const {
  const std::size_t n = node_count();
  std::vector<std::int32_t> depth(n, -1);
  // Infectors always precede their children in time, so a bucket pass by
  // infection day visits parents first.
  std::int32_t last_day = 0;
  for (auto d : infection_day) last_day = std::max(last_day, d);
  std::vector<std::vector<NodeId>> by_day(static_cast<std::size_t>(last_day) + 1);
  for (NodeId v = 0; v < n; ++v) {
    if (infection_day[v] != kNotInfected) by_day[infection_day[v]].push_back(v);
  }
  for (const auto& bucket : by_day) {
    for (NodeId v : bucket) {
      depth[v] = infector[v] == kNoInfector ? 0 : depth[infector[v]] + 1;
    }
  }
  return depth;
}

Epicurve Epicurve::from_cumulative(std::vector<double> cumulative,
                                   std::size_t population) {
  Epicurve c;
  c.incident.resize(cumulative.size());
  for (std::size_t t = 0; t < cumulative.size(); ++t) {
    c.incident[t] = t == 0 ? cumulative[0] : cumulative[t] - cumulative[t - 1];
  }
  c.cumulative = std::move(cumulative);
  c.population = population;
  return c;
}

Simulator::Simulator(const ContactNetwork& net, DiseaseModel model)
    : net_(&net), model_(model) {
  model_.validate();
  edge_probability_.reserve(net.edge_count());
  for (const auto& e : net.edges()) {
    edge_probability_.push_back(model_.contact_probability(e.duration));
  }
}

namespace {

enum State : std::uint8_t { susceptible, exposed, infectious, recovered };

}  // namespace

SimulationResult Simulator::run(const SimulationConfig& cfg) const {
  const std::size_t n = net_->node_count();
  cfg.validate(n);
  Rng rng(cfg.rng_seed);

  SimulationResult out;
  Dendrogram& den = out.dendrogram;
  den.infection_day.assign(n, kNotInfected);
  den.infector.assign(n, kNoInfector);
  den.seed_nodes = cfg.seed_nodes.empty()
                       ? rng.sample(static_cast<std::uint32_t>(n),
                                    static_cast<std::uint32_t>(cfg.seed_count))
                       : cfg.seed_nodes;

  const bool seir = model_.kind == DiseaseKind::seir;
  const double p_onset = seir ? -std::expm1(-model_.alpha) : 1.0;
  const double p_recover = seir ? -std::expm1(-model_.gamma) : 0.0;

  std::vector<std::uint8_t> state(n, susceptible);
  std::vector<NodeId> exposed_nodes, infectious_nodes, newly;
  std::vector<std::uint32_t> transmitters(n, 0);
  for (NodeId s : den.seed_nodes) {
    state[s] = infectious;
    den.infection_day[s] = 0;
    infectious_nodes.push_back(s);
  }

  std::vector<double> cumulative(static_cast<std::size_t>(cfg.horizon) + 1, 0.0);
  cumulative[0] = static_cast<double>(den.seed_nodes.size());

  for (int day = 1; day <= cfg.horizon; ++day) {
    if (exposed_nodes.empty() && infectious_nodes.empty()) {
      for (int t = day; t <= cfg.horizon; ++t) cumulative[t] = cumulative[t - 1];
      break;
    }
    // Transmission uses yesterday's states only.
    newly.clear();
    for (NodeId u : infectious_nodes) {
      for (const auto& inc : net_->incident(u)) {
        const NodeId v = inc.neighbor;
        if (state[v] != susceptible) continue;
        if (rng.uniform() >= edge_probability_[inc.edge]) continue;
        // Reservoir choice keeps the infector uniform over today's
        // successful transmitters.
        if (transmitters[v] == 0) {
          newly.push_back(v);
          den.infector[v] = u;
        } else if (rng.below(transmitters[v] + 1) == 0) {
          den.infector[v] = u;
        }
        ++transmitters[v];
      }
    }

    if (seir) {
      std::size_t keep = 0;
      for (NodeId u : infectious_nodes) {
        if (rng.uniform() < p_recover) {
          state[u] = recovered;
        } else {
          infectious_nodes[keep++] = u;
        }
      }
      infectious_nodes.resize(keep);
      keep = 0;
      for (NodeId v : exposed_nodes) {
        if (rng.uniform() < p_onset) {
          state[v] = infectious;
          infectious_nodes.push_back(v);
        } else {
          exposed_nodes[keep++] = v;
        }
      }
      exposed_nodes.resize(keep);
    }

    for (NodeId v : newly) {
      transmitters[v] = 0;
      den.infection_day[v] = day;
      if (seir) {
        state[v] = exposed;
        exposed_nodes.push_back(v);
      } else {
        state[v] = infectious;
        infectious_nodes.push_back(v);
      }
    }
    cumulative[day] = cumulative[day - 1] + static_cast<double>(newly.size());
  }

  out.epicurve = Epicurve::from_cumulative(std::move(cumulative), n);
  return out;
}

SimulationResult simulate(const ContactNetwork& net, const DiseaseModel& model,
                          const SimulationConfig& cfg) {
  return Simulator(net, model).run(cfg);
}

Ensemble run_ensemble(const ContactNetwork& net, const DiseaseModel& model,
                      const SimulationConfig& cfg, std::size_t runs) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  cfg.validate(net.node_count());
  const Simulator sim(net, model);

  Ensemble ens;
  ens.dendrograms.resize(runs);
  std::vector<std::vector<double>> curves(runs);
  parallel_for(runs, [&](std::size_t i) {
    SimulationConfig c = cfg;
    c.rng_seed = run_seed(cfg.rng_seed, i);
    auto r = sim.run(c);
    ens.dendrograms[i] = std::move(r.dendrogram);
    curves[i] = std::move(r.epicurve.cumulative);
  });

  // Integer counts summed exactly, so the mean is independent of run order.
  std::vector<std::int64_t> total(static_cast<std::size_t>(cfg.horizon) + 1, 0);
  for (const auto& c : curves) {
    for (std::size_t t = 0; t < c.size(); ++t) total[t] += static_cast<std::int64_t>(c[t]);
  }
  std::vector<double> mean(total.size());
  for (std::size_t t = 0; t < total.size(); ++t) {
    mean[t] = static_cast<double>(total[t]) / static_cast<double>(runs);
  }
  ens.mean = Epicurve::from_cumulative(std::move(mean), net.node_count());
  return ens;
}

Epicurve epicurve_of(const Dendrogram& d, int horizon) {
  std::vector<double> cumulative(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (auto day : d.infection_day) {
    if (day != kNotInfected && day <= horizon) cumulative[day] += 1.0;
  }
  for (std::size_t t = 1; t < cumulative.size(); ++t) cumulative[t] += cumulative[t - 1];
  return Epicurve::from_cumulative(std::move(cumulative), d.node_count());
}

void write_dendrogram(const Dendrogram& d, std::ostream& out) {
  for (NodeId v = 0; v < d.node_count(); ++v) {
    if (!d.infected(v)) continue;
    out << v << ' ' << d.infection_day[v] << ' ';
    if (d.infector[v] == kNoInfector) {
      out << -1;
    } else {
      out << d.infector[v];
    }
    out << '\n';
  }
}

void write_epicurve_csv(const Epicurve& c, std::ostream& out) {
  out << "day,cumulative,incident\n";
  for (std::size_t t = 0; t < c.cumulative.size(); ++t) {
    out << t << ',' << c.cumulative[t] << ',' << c.incident[t] << '\n';
  }
}

}  // namespace socsens
