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

#include "socsens/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "socsens/csv.hpp"
#include "socsens/epicurve.hpp"
#include "socsens/rng.hpp"
#include "socsens/sensors.hpp"

namespace socsens {

namespace {

constexpr std::size_t kDemographic[] = {kAge, kGender, kIncome};
constexpr std::size_t kInteraction[] = {
    kMeetingCount, kTotalDuration, kLongMeetingCount, kHomeCount,
    kWorkCount,    kShopCount,     kVisitCount,       kSchoolCount,
    kHomePercent,  kWorkPercent,   kShopPercent,      kVisitPercent,
    kSchoolPercent};
constexpr std::size_t kHistogramBins = 20;

// Rank of every node in a seeded shuffle, used as a neutral tie-breaker.
std::vector<std::uint32_t> shuffled_rank(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const auto order = rng.sample(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n));
  std::vector<std::uint32_t> rank(n);
  for (std::uint32_t i = 0; i < n; ++i) rank[order[i]] = i;
  return rank;
}

std::vector<NodeId> top_k(const std::vector<double>& score, std::size_t k,
                          std::uint64_t seed) {
  if (k == 0 || k > score.size()) throw std::invalid_argument("k must be in [1, N]");
  const auto rank = shuffled_rank(score.size(), seed);
  std::vector<NodeId> order(score.size());
  for (NodeId v = 0; v < order.size(); ++v) order[v] = v;
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), [&](NodeId a, NodeId b) {
                      if (score[a] != score[b]) return score[a] > score[b];
                      return rank[a] < rank[b];
                    });
  order.resize(k);
  return order;
}

class Histogram {
 public:
  Histogram(std::span<const FeatureRow> features, std::size_t feature) : feature_(feature) {
    lo_ = hi_ = features.empty() ? 0.0 : features.front()[feature];
    for (const auto& r : features) {
      lo_ = std::min(lo_, r[feature]);
      hi_ = std::max(hi_, r[feature]);
    }
  }

  std::size_t bin(const FeatureRow& r) const {
    if (!(hi_ > lo_)) return 0;
    const double x = (r[feature_] - lo_) / (hi_ - lo_) * kHistogramBins;
    return std::min(static_cast<std::size_t>(x), kHistogramBins - 1);
  }

  std::vector<double> density(std::span<const FeatureRow> features,
                              std::span<const NodeId> members) const {
    std::vector<double> p(kHistogramBins, 0.0);
    for (NodeId v : members) p[bin(features[v])] += 1.0;
    for (auto& x : p) x /= static_cast<double>(members.size());
    return p;
  }

 private:
  std::size_t feature_;
  double lo_, hi_;
};

std::vector<NodeId> heuristic_ranking(std::span<const Dendrogram> dens,
                                      Heuristic strategy, double eps0) {
  auto scores = strategy == Heuristic::tt ? transmission_scores(dens) : dominator_scores(dens);
  const double runs = static_cast<double>(dens.size());
  std::erase_if(scores, [&](const NodeScore& s) {
    return static_cast<double>(s.hit_count) / runs < eps0;
  });
  sort_by_infection_time(scores);
  std::vector<NodeId> out;
  out.reserve(scores.size());
  for (const auto& s : scores) out.push_back(s.node);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const char* feature_name(std::size_t feature) {
  static constexpr const char* kNames[kFeatureCount] = {
      "age",          "gender",        "income",       "meeting_count",
      "total_duration", "long_meetings", "home_count", "work_count",
      "shop_count",   "visit_count",   "school_count", "home_pct",
      "work_pct",     "shop_pct",      "visit_pct",    "school_pct"};
  return feature < kFeatureCount ? kNames[feature] : "unknown";
}

std::span<const std::size_t> demographic_features() { return kDemographic; }
std::span<const std::size_t> interaction_features() { return kInteraction; }

std::vector<FeatureRow> extract_features(const ContactNetwork& net,
                                         std::uint32_t long_threshold) {
  std::vector<FeatureRow> out(net.node_count(), FeatureRow(kFeatureCount, 0.0));
  const auto edges = net.edges();
  for (NodeId v = 0; v < net.node_count(); ++v) {
    auto& f = out[v];
    const auto& d = net.demographics(v);
    f[kAge] = d.age;
    f[kGender] = static_cast<double>(d.gender);
    f[kIncome] = static_cast<double>(d.income);
    for (const auto& inc : net.incident(v)) {
      const auto& e = edges[inc.edge];
      f[kMeetingCount] += 1.0;
      f[kTotalDuration] += e.duration;
      if (e.duration > long_threshold) f[kLongMeetingCount] += 1.0;
      const auto type = static_cast<std::size_t>(e.type);
      if (type >= 1 && type <= 5) f[kHomeCount + type - 1] += 1.0;
    }
    if (f[kMeetingCount] > 0.0) {
      for (std::size_t t = 0; t < 5; ++t) {
        f[kHomePercent + t] = 100.0 * f[kHomeCount + t] / f[kMeetingCount];
      }
    }
  }
  return out;
}

void SurrogateCriteria::validate() const {
  if (age_min > age_max) throw std::invalid_argument("age_min exceeds age_max");
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(long_fraction_min) || !unit(type_fraction_min)) {
    throw std::invalid_argument("criteria fractions must be in [0, 1]");
  }
  for (auto t : required_types) {
    const auto code = static_cast<int>(t);
    if (code < 1 || code > 5) throw std::invalid_argument("required type must be 1-5");
  }
}

SurrogateCriteria parse_criteria(std::istream& in) {
  SurrogateCriteria c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("criteria line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      if (key == "age_min") {
        c.age_min = std::stoi(value);
      } else if (key == "age_max") {
        c.age_max = std::stoi(value);
      } else if (key == "long_fraction_min") {
        c.long_fraction_min = std::stod(value);
      } else if (key == "type_fraction_min") {
        c.type_fraction_min = std::stod(value);
      } else if (key == "required_types") {
        c.required_types.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
          c.required_types.push_back(static_cast<MeetingType>(std::stoi(trim(item))));
        }
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("criteria line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  c.validate();
  return c;
}

std::vector<NodeId> apply_criteria(std::span<const FeatureRow> features,
                                   const SurrogateCriteria& criteria) {
  criteria.validate();
  std::vector<NodeId> out;
  for (NodeId v = 0; v < features.size(); ++v) {
    const auto& f = features[v];
    if (f[kAge] < criteria.age_min || f[kAge] > criteria.age_max) continue;
    const double meetings = f[kMeetingCount];
    const double long_fraction = meetings > 0.0 ? f[kLongMeetingCount] / meetings : 0.0;
    double typed = 0.0;
    for (auto t : criteria.required_types) {
      typed += f[kHomeCount + static_cast<std::size_t>(t) - 1];
    }
    const double type_fraction = meetings > 0.0 ? typed / meetings : 0.0;
    if (long_fraction < criteria.long_fraction_min) continue;
    if (type_fraction < criteria.type_fraction_min) continue;
    out.push_back(v);
  }
  return out;
}

std::vector<FeatureDivergence> rank_features(std::span<const FeatureRow> features,
                                             std::span<const NodeId> sensors,
                                             std::span<const NodeId> reference,
                                             std::span<const std::size_t> candidates) {
  if (sensors.empty() || reference.empty()) {
    throw std::invalid_argument("sensor and reference sets must be non-empty");
  }
  std::vector<FeatureDivergence> out;
  for (std::size_t f : candidates) {
    const Histogram h(features, f);
    const auto ps = h.density(features, sensors);
    const auto pr = h.density(features, reference);
    double tv = 0.0;
    for (std::size_t b = 0; b < kHistogramBins; ++b) tv += std::abs(ps[b] - pr[b]);
    out.push_back({f, 0.5 * tv});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.distance > b.distance;
  });
  return out;
}

std::vector<NodeId> select_by_distribution(std::span<const FeatureRow> features,
                                           std::span<const NodeId> sensors,
                                           std::span<const NodeId> reference,
                                           std::span<const std::size_t> selected,
                                           std::size_t k, std::uint64_t seed) {
  constexpr double kSmoothing = 1e-3;
  std::vector<double> score(features.size(), 0.0);
  for (std::size_t f : selected) {
    const Histogram h(features, f);
    const auto ps = h.density(features, sensors);
    const auto pr = h.density(features, reference);
    for (NodeId v = 0; v < features.size(); ++v) {
      const auto b = h.bin(features[v]);
      score[v] += std::log((ps[b] + kSmoothing) / (pr[b] + kSmoothing));
    }
  }
  return top_k(score, k, seed);
}

std::vector<NodeId> select_by_tree(const DecisionTree& tree,
                                   std::span<const FeatureRow> features,
                                   std::size_t k, std::uint64_t seed) {
  std::vector<double> score(features.size());
  for (NodeId v = 0; v < features.size(); ++v) score[v] = tree.predict_proba(features[v]);
  return top_k(score, k, seed);
}

TrainingSet make_training_set(std::span<const FeatureRow> features,
                              std::span<const NodeId> positives,
                              std::span<const NodeId> negatives) {
  TrainingSet t;
  for (NodeId v : positives) {
    t.rows.push_back(features[v]);
    t.labels.push_back(1);
  }
  for (NodeId v : negatives) {
    t.rows.push_back(features[v]);
    t.labels.push_back(0);
  }
  return t;
}

std::vector<NodeId> sample_negatives(std::size_t node_count,
                                     std::span<const NodeId> excluded,
                                     std::size_t count, std::uint64_t seed) {
  std::vector<bool> banned(node_count, false);
  for (NodeId v : excluded) banned[v] = true;
  std::vector<NodeId> pool;
  for (NodeId v = 0; v < node_count; ++v) {
    if (!banned[v]) pool.push_back(v);
  }
  if (count > pool.size()) throw std::invalid_argument("not enough nodes for negatives");
  Rng rng(seed);
  std::vector<NodeId> out;
  for (auto i : rng.sample(static_cast<std::uint32_t>(pool.size()),
                           static_cast<std::uint32_t>(count))) {
    out.push_back(pool[i]);
  }
  return out;
}

RefineResult intersect_predictions(std::span<const NodeId> candidates,
                                   std::span<const FeatureRow> features,
                                   std::span<const DecisionTree> trees) {
  RefineResult out;
  std::vector<NodeId> kept(candidates.begin(), candidates.end());
  std::sort(kept.begin(), kept.end());
  for (const auto& tree : trees) {
    std::size_t accepted = 0;
    for (NodeId v : candidates) accepted += tree.predict(features[v]);
    out.per_model_positive.push_back(accepted);
    std::erase_if(kept, [&](NodeId v) { return !tree.predict(features[v]); });
  }
  out.members = std::move(kept);
  out.status = out.members.empty() ? RefineStatus::empty : RefineStatus::ok;
  return out;
}

RefineResult refine_surrogates(const ContactNetwork& net,
                               std::span<const FeatureRow> features,
                               std::span<const NodeId> candidates,
                               const RefineOptions& opts) {
  if (opts.rates.empty()) throw std::invalid_argument("no transmission rates given");
  if (!(opts.train_fraction > 0.0 && opts.train_fraction < 0.5)) {
    throw std::invalid_argument("train_fraction must be in (0, 0.5)");
  }
  const std::size_t n = net.node_count();
  const auto per_class = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(opts.train_fraction * static_cast<double>(n))));

  std::vector<DecisionTree> trees;
  for (std::size_t i = 0; i < opts.rates.size(); ++i) {
    DiseaseModel model = opts.model;
    model.beta = opts.rates[i];
    SimulationConfig cfg;
    cfg.seed_count = opts.seed_count;
    cfg.horizon = opts.horizon;
    cfg.rng_seed = stream_seed(opts.rng_seed, "refine-train", i);
    const auto ens = run_ensemble(net, model, cfg, opts.runs);
    auto ranking = heuristic_ranking(ens.dendrograms, opts.strategy, opts.eps0);
    if (ranking.size() > per_class) ranking.resize(per_class);
    if (ranking.empty()) throw std::runtime_error("no heuristic sensors at rate " + std::to_string(opts.rates[i]));
    const auto negatives = sample_negatives(n, ranking, ranking.size(),
                                            stream_seed(opts.rng_seed, "refine-negatives", i));
    const auto train = make_training_set(features, ranking, negatives);
    trees.push_back(DecisionTree::train(train.rows, train.labels, opts.tree));
  }
  return intersect_predictions(candidates, features, trees);
}

std::vector<TierResult> compare_information_tiers(const ContactNetwork& net,
                                                  const DiseaseModel& model,
                                                  std::size_t k,
                                                  const TierOptions& opts) {
  const std::size_t n = net.node_count();
  if (k == 0 || k > n) throw std::invalid_argument("k must be in [1, N]");
  const auto features = extract_features(net);

  SimulationConfig cfg;
  cfg.seed_count = opts.seed_count;
  cfg.horizon = opts.horizon;
  cfg.rng_seed = stream_seed(opts.rng_seed, "tiers-train");
  const auto train = run_ensemble(net, model, cfg, opts.runs);
  const HeuristicOptions heuristic{opts.eps0};
  const auto tt = select_tt(train.dendrograms, k, heuristic);
  const auto dt = select_dt(train.dendrograms, k, heuristic);
  const auto reference = select_random(n, k, stream_seed(opts.rng_seed, "tiers-random"));

  const auto per_class = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(opts.train_fraction * static_cast<double>(n))));
  std::vector<NodeId> positives(tt.members.begin(),
                                tt.members.begin() + static_cast<std::ptrdiff_t>(
                                                         std::min(per_class, tt.members.size())));
  const auto negatives = sample_negatives(n, positives, positives.size(),
                                          stream_seed(opts.rng_seed, "tiers-negatives"));
  const auto training = make_training_set(features, positives, negatives);

  auto top3 = [&](std::span<const std::size_t> group) {
    const auto ranked = rank_features(features, tt.members, reference.members, group);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, ranked.size()); ++i) {
      out.push_back(ranked[i].feature);
    }
    return out;
  };
  auto tree_on = [&](std::vector<std::size_t> allowed) {
    TreeParams p = opts.tree;
    p.allowed_features = std::move(allowed);
    return DecisionTree::train(training.rows, training.labels, p);
  };
  std::vector<std::size_t> both(demographic_features().begin(), demographic_features().end());
  both.insert(both.end(), interaction_features().begin(), interaction_features().end());

  const auto tie_seed = stream_seed(opts.rng_seed, "tiers-ties");
  std::vector<std::pair<std::string, std::vector<NodeId>>> sets;
  sets.emplace_back("distr-demo",
                    select_by_distribution(features, tt.members, reference.members,
                                           top3(demographic_features()), k, tie_seed));
  sets.emplace_back("distr-inter",
                    select_by_distribution(features, tt.members, reference.members,
                                           top3(interaction_features()), k, tie_seed));
  sets.emplace_back("tree-demo",
                    select_by_tree(tree_on({demographic_features().begin(),
                                            demographic_features().end()}),
                                   features, k, tie_seed));
  sets.emplace_back("tree-inter",
                    select_by_tree(tree_on({interaction_features().begin(),
                                            interaction_features().end()}),
                                   features, k, tie_seed));
  sets.emplace_back("tree-demo+inter", select_by_tree(tree_on(both), features, k, tie_seed));
  sets.emplace_back("tt", tt.members);
  sets.emplace_back("dt", dt.members);

  cfg.rng_seed = stream_seed(opts.rng_seed, "tiers-eval");
  const auto eval = run_ensemble(net, model, cfg, opts.runs);
  std::vector<TierResult> out;
  for (const auto& [name, members] : sets) {
    const auto sample = evaluate_leads(eval.dendrograms, members, reference.members,
                                       opts.horizon, {opts.min_cases, -1});
    const auto d = summarize(sample.leads);
    out.push_back({name, members.size(), sample.leads.size(), sample.failures, d.mean,
                   d.variance});
  }
  return out;
}

void write_tiers_csv(std::span<const TierResult> tiers, std::ostream& out) {
  out << "strategy,size,ok_runs,fit_failures,mean_lead,variance\n";
  for (const auto& t : tiers) {
    out << t.strategy << ',' << t.size << ',' << t.ok_runs << ',' << t.failures << ','
        << csv_number(t.mean_lead) << ',' << csv_number(t.variance) << '\n';
  }
}

}  // namespace socsens
