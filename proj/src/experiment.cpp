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

#include "socsens/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "socsens/csv.hpp"
#include "socsens/rng.hpp"

namespace socsens {

namespace {

constexpr const char* kStrategies[] = {"topk", "wd", "tt", "dt", "greedy", "random"};

SimulationConfig sim_config(const ExperimentConfig& cfg, std::size_t seeds,
                            std::uint64_t stream) {
  SimulationConfig s;
  s.seed_count = seeds;
  s.horizon = cfg.horizon;
  s.rng_seed = stream;
  return s;
}

std::size_t default_seeds(const ExperimentConfig& cfg) {
  // Prefer the middle seed count of the configured list.
  return cfg.seed_counts[cfg.seed_counts.size() / 2];
}

LeadRow lead_row(const std::string& network, const std::string& strategy,
                 std::size_t seeds, std::span<const Dendrogram> eval,
                 std::span<const NodeId> sensors, std::span<const NodeId> reference,
                 const ExperimentConfig& cfg) {
  if (sensors.empty()) {
    // Nothing qualified as a sensor; every run counts as a failure.
    return {network, strategy, seeds, eval.size(), 0, eval.size(), std::nan(""), std::nan("")};
  }
  const auto sample = evaluate_leads(eval, sensors, reference, cfg.horizon,
                                     {cfg.min_cases, -1});
  const auto d = summarize(sample.leads);
  return {network,         strategy,      seeds,   eval.size(), sample.leads.size(),
          sample.failures, sample.leads.empty() ? std::nan("") : d.mean, d.variance};
}

std::vector<double> group_mean(std::span<const Dendrogram> runs,
                               std::span<const NodeId> members, int horizon) {
  std::vector<double> mean(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (const auto& d : runs) {
    const auto c = restrict_epicurve(d, members, horizon);
    for (std::size_t t = 0; t < mean.size(); ++t) mean[t] += c.cumulative[t];
  }
  for (auto& x : mean) x /= static_cast<double>(runs.size());
  return mean;
}

}  // namespace

std::string NetworkSource::label() const {
  if (!path.empty()) return path;
  return generator;
}

void ExperimentConfig::validate() const {
  model.validate();
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  if (k >= 1.0 && k != std::floor(k)) throw std::invalid_argument("k above 1 must be an integer");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in (0, 1]");
  if (!(eps0 >= 0.0 && eps0 <= 1.0)) throw std::invalid_argument("eps0 must be in [0, 1]");
  if (runs == 0) throw std::invalid_argument("runs must be positive");
  if (seed_counts.empty()) throw std::invalid_argument("at least one seed count is required");
  for (auto s : seed_counts) {
    if (s == 0) throw std::invalid_argument("seed counts must be positive");
  }
  if (horizon < 5) throw std::invalid_argument("horizon must be at least 5 days");
  if (nominations == 0) throw std::invalid_argument("nominations must be positive");
  if (strategies.empty()) throw std::invalid_argument("no strategy given");
  for (const auto& s : strategies) {
    if (!is_known_strategy(s)) throw std::invalid_argument("unknown strategy '" + s + "'");
  }
  if (network.path.empty() && network.generator != "citylike" &&
      network.generator != "starlike") {
    throw std::invalid_argument("unknown generator '" + network.generator + "'");
  }
}

std::size_t ExperimentConfig::resolve_k(std::size_t node_count) const {
  const auto abs = k < 1.0 ? std::llround(k * static_cast<double>(node_count))
                           : std::llround(k);
  const auto out = static_cast<std::size_t>(std::max<long long>(1, abs));
  if (out > node_count) throw std::invalid_argument("k exceeds the number of nodes");
  return out;
}

ContactNetwork load_or_generate(const NetworkSource& src) {
  if (!src.path.empty()) return load_network(src.path, src.format);
  if (src.generator == "starlike") return generate_starlike(src.nodes, src.hub_fraction, src.seed);
  if (src.generator == "citylike") return generate_citylike(src.nodes, src.avg_degree, src.seed);
  throw std::invalid_argument("unknown generator '" + src.generator + "'");
}

bool is_known_strategy(const std::string& name) {
  return std::find(std::begin(kStrategies), std::end(kStrategies), name) !=
         std::end(kStrategies);
}

SensorSet select_strategy(const std::string& name, const ContactNetwork& net,
                          std::span<const Dendrogram> train, std::size_t k,
                          const ExperimentConfig& cfg, std::uint64_t seed) {
  if (name == "topk") return select_topk_degree(net, k, k, cfg.nominations, seed);
  if (name == "wd") return select_weighted_degree(net, k, k, cfg.nominations, seed);
  if (name == "tt") return select_tt(train, k, cfg.heuristic());
  if (name == "dt") return select_dt(train, k, cfg.heuristic());
  if (name == "greedy") return select_greedy_mait(train, k, cfg.eps);
  if (name == "random") return select_random(net.node_count(), k, seed);
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::vector<LeadRow> run_leadtime(const ContactNetwork& net, const ExperimentConfig& cfg) {
  cfg.validate();
  const auto k = cfg.resolve_k(net.node_count());
  const auto reference =
      select_random(net.node_count(), k, stream_seed(cfg.rng_seed, "random-set"));
  std::vector<LeadRow> rows;
  for (std::size_t seeds : cfg.seed_counts) {
    const auto train = run_ensemble(net, cfg.model,
                                    sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "train", seeds)),
                                    cfg.runs);
    const auto eval = run_ensemble(net, cfg.model,
                                   sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "eval", seeds)),
                                   cfg.runs);
    for (const auto& name : cfg.strategies) {
      const auto sensors = select_strategy(name, net, train.dendrograms, k, cfg,
                                           stream_seed(cfg.rng_seed, "select-" + name, seeds));
      rows.push_back(lead_row(cfg.network.label(), name, seeds, eval.dendrograms,
                              sensors.members, reference.members, cfg));
    }
  }
  return rows;
}

void write_leadtime_csv(std::span<const LeadRow> rows, std::ostream& out) {
  out << "network,strategy,seeds,runs,ok_runs,fit_failures,mean_lead,variance\n";
  for (const auto& r : rows) {
    out << r.network << ',' << r.strategy << ',' << r.seeds << ',' << r.runs << ','
        << r.ok_runs << ',' << r.failures << ',' << csv_number(r.mean_lead) << ','
        << csv_number(r.variance) << '\n';
  }
}

std::vector<FanoRow> run_fano(const ContactNetwork& net, const ExperimentConfig& cfg,
                              std::span<const double> fractions) {
  cfg.validate();
  if (fractions.empty()) throw std::invalid_argument("no sensor set sizes given");
  const auto seeds = default_seeds(cfg);
  const auto train = run_ensemble(net, cfg.model,
                                  sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "train", seeds)),
                                  cfg.runs);
  const auto eval = run_ensemble(net, cfg.model,
                                 sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "eval", seeds)),
                                 cfg.runs);
  const auto& name = cfg.strategies.front();
  std::vector<FanoRow> rows;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double f = fractions[i];
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("sizes must be fractions in (0, 1)");
    ExperimentConfig sized = cfg;
    sized.k = f;
    const auto k = sized.resolve_k(net.node_count());
    const auto sensors = select_strategy(name, net, train.dendrograms, k, cfg,
                                         stream_seed(cfg.rng_seed, "select-" + name, i));
    const auto reference =
        select_random(net.node_count(), k, stream_seed(cfg.rng_seed, "random-set", i));
    const auto sample = evaluate_leads(eval.dendrograms, sensors.members, reference.members,
                                       cfg.horizon, {cfg.min_cases, -1});
    const auto d = summarize(sample.leads);
    rows.push_back({f, k, sample.leads.size(), sample.leads.empty() ? std::nan("") : d.mean,
                    d.variance, d.inverse_fano});
  }
  return rows;
}

void write_fano_csv(std::span<const FanoRow> rows, std::ostream& out) {
  out << "size,k,runs_ok,mean_lead,variance,inverse_fano\n";
  for (const auto& r : rows) {
    out << csv_number(r.fraction, 4) << ',' << r.k << ',' << r.ok_runs << ','
        << csv_number(r.mean_lead) << ',' << csv_number(r.variance) << ','
        << csv_number(r.inverse_fano) << '\n';
  }
}

StabilityCurve run_stability(const ContactNetwork& net, const ExperimentConfig& cfg,
                             std::span<const int> windows, double tolerance) {
  cfg.validate();
  const auto seeds = default_seeds(cfg);
  const auto k = cfg.resolve_k(net.node_count());
  const auto train = run_ensemble(net, cfg.model,
                                  sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "train", seeds)),
                                  cfg.runs);
  const auto eval = run_ensemble(net, cfg.model,
                                 sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "eval", seeds)),
                                 cfg.runs);
  const auto& name = cfg.strategies.front();
  const auto sensors = select_strategy(name, net, train.dendrograms, k, cfg,
                                       stream_seed(cfg.rng_seed, "select-" + name, seeds));
  const auto reference =
      select_random(net.node_count(), k, stream_seed(cfg.rng_seed, "random-set"));
  return stability_curve(eval.dendrograms, sensors.members, reference.members, cfg.horizon,
                         windows, tolerance, cfg.min_cases);
}

void write_stability_csv(const StabilityCurve& curve, std::ostream& out) {
  out << "window,runs_ok,fit_failures,mean_lead,deviation\n";
  for (const auto& p : curve.points) {
    out << p.window << ',' << p.ok << ',' << p.failures << ',' << csv_number(p.mean_lead)
        << ',' << csv_number(p.deviation) << '\n';
  }
  out << "# full_lead," << csv_number(curve.full_lead) << '\n';
  out << "# stable_from," << (curve.stable_from ? std::to_string(*curve.stable_from) : "n/a")
      << '\n';
}

PredictReport run_predict(const ContactNetwork& net, const ExperimentConfig& cfg) {
  cfg.validate();
  const auto seeds = default_seeds(cfg);
  const auto k = cfg.resolve_k(net.node_count());
  const auto train = run_ensemble(net, cfg.model,
                                  sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "train", seeds)),
                                  cfg.runs);
  const auto eval = run_ensemble(net, cfg.model,
                                 sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "eval", seeds)),
                                 cfg.runs);
  const auto& name = cfg.strategies.front();
  const auto sensors = select_strategy(name, net, train.dendrograms, k, cfg,
                                       stream_seed(cfg.rng_seed, "select-" + name, seeds));
  const auto reference =
      select_random(net.node_count(), k, stream_seed(cfg.rng_seed, "random-set"));
  PredictReport r;
  r.sensor_mean = group_mean(eval.dendrograms, sensors.members, cfg.horizon);
  r.random_mean = group_mean(eval.dendrograms, reference.members, cfg.horizon);
  r.fit = fit_poly_predictor(r.sensor_mean, r.random_mean,
                             static_cast<std::size_t>(cfg.horizon / 2));
  return r;
}

void write_predict_csv(const PredictReport& r, std::ostream& out) {
  out << "day,sensor_cumulative,random_cumulative,predicted,split\n";
  for (std::size_t t = 0; t < r.sensor_mean.size(); ++t) {
    out << t << ',' << csv_number(r.sensor_mean[t]) << ',' << csv_number(r.random_mean[t])
        << ',' << csv_number(r.fit.predicted[t]) << ','
        << (t < r.fit.train_days ? "train" : "test") << '\n';
  }
  out << "# train_rmse," << csv_number(r.fit.train_rmse) << '\n';
  out << "# test_rmse," << csv_number(r.fit.test_rmse) << '\n';
}

SurrogateReport run_surrogate(const ContactNetwork& net, const ExperimentConfig& cfg,
                              const SurrogateCriteria& criteria,
                              std::span<const double> rates) {
  cfg.validate();
  const auto features = extract_features(net);
  SurrogateReport r;
  r.criteria_set = apply_criteria(features, criteria);

  const auto seeds = default_seeds(cfg);
  RefineOptions opts;
  opts.rates.assign(rates.begin(), rates.end());
  opts.rng_seed = stream_seed(cfg.rng_seed, "surrogate");
  opts.model = cfg.model;
  opts.runs = cfg.runs;
  opts.seed_count = seeds;
  opts.horizon = cfg.horizon;
  opts.eps0 = cfg.eps0;
  if (r.criteria_set.empty()) {
    r.refined.status = RefineStatus::empty;
    r.refined.per_model_positive.assign(rates.size(), 0);
  } else {
    r.refined = refine_surrogates(net, features, r.criteria_set, opts);
  }

  const auto k = cfg.resolve_k(net.node_count());
  const auto train = run_ensemble(net, cfg.model,
                                  sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "train", seeds)),
                                  cfg.runs);
  const auto eval = run_ensemble(net, cfg.model,
                                 sim_config(cfg, seeds, stream_seed(cfg.rng_seed, "eval", seeds)),
                                 cfg.runs);
  const auto dt = select_dt(train.dendrograms, k, cfg.heuristic());
  r.dt_size = dt.members.size();
  const auto reference =
      select_random(net.node_count(), k, stream_seed(cfg.rng_seed, "random-set"));
  r.dt_lead = lead_row(cfg.network.label(), "dt", seeds, eval.dendrograms, dt.members,
                       reference.members, cfg);
  r.surrogate_lead = lead_row(cfg.network.label(), "surrogate", seeds, eval.dendrograms,
                              r.refined.members, reference.members, cfg);
  return r;
}

void write_surrogate_csv(const SurrogateReport& r, std::ostream& out) {
  out << "set,size,ok_runs,fit_failures,mean_lead,variance\n";
  out << "criteria," << r.criteria_set.size() << ",,,,\n";
  for (const auto* row : {&r.surrogate_lead, &r.dt_lead}) {
    const auto size = row == &r.dt_lead ? r.dt_size : r.refined.members.size();
    out << row->strategy << ',' << size << ',' << row->ok_runs << ',' << row->failures << ','
        << csv_number(row->mean_lead) << ',' << csv_number(row->variance) << '\n';
  }
  for (std::size_t i = 0; i < r.refined.per_model_positive.size(); ++i) {
    out << "# model_" << i << "_positive," << r.refined.per_model_positive[i] << '\n';
  }
}

std::vector<TierResult> run_tiers(const ContactNetwork& net, const ExperimentConfig& cfg) {
  cfg.validate();
  TierOptions opts;
  opts.runs = cfg.runs;
  opts.seed_count = default_seeds(cfg);
  opts.horizon = cfg.horizon;
  opts.eps0 = cfg.eps0;
  opts.min_cases = cfg.min_cases;
  opts.rng_seed = stream_seed(cfg.rng_seed, "tiers");
  return compare_information_tiers(net, cfg.model, cfg.resolve_k(net.node_count()), opts);
}

}  // namespace socsens
