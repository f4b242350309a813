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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. CSVs are written to the directory given
// as the first argument (default: acceptance_out).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../common/dominator_oracle.hpp"
#include "socsens/csv.hpp"
#include "socsens/domtree.hpp"
#include "socsens/epicurve.hpp"
#include "socsens/epidemic.hpp"
#include "socsens/experiment.hpp"
#include "socsens/ode.hpp"
#include "socsens/rng.hpp"

namespace {

using namespace socsens;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kMasterSeed = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double x, int precision = 3) { return csv_number(x, precision); }

// All CSV text produced by the suite, keyed by file name.
using CsvBundle = std::map<std::string, std::string>;

ExperimentConfig citylike_config() {
  ExperimentConfig c;
  c.network.generator = "citylike";
  c.network.nodes = 20000;
  c.network.avg_degree = 50.0;
  c.network.seed = kMasterSeed;
  c.runs = 200;
  c.rng_seed = kMasterSeed;
  return c;
}

ExperimentConfig starlike_config() {
  auto c = citylike_config();
  c.network.generator = "starlike";
  c.network.nodes = 10000;
  c.network.hub_fraction = 0.02;
  return c;
}

Outcome ac1_dominator_oracle() {
  const auto start = Clock::now();
  Rng rng(stream_seed(kMasterSeed, "ac1"));
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_digraph(rng, 12);
    if (build_dominator_tree(g).idom != testing::brute_force_idom(g)) ++mismatches;
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && secs < 10.0,
          "200 digraphs, mismatches=" + std::to_string(mismatches) + ", " + num(secs) + " s"};
}

Outcome ac2_example_graph() {
  using namespace testing;
  const auto t = build_dominator_tree(example_graph());
  const bool ok = t.dominates(B, H) && t.dominates(C, J) && t.dominates(F, J) &&
                  t.dominates(C, F);
  return {ok, "B dom H, C dom J, F dom J, C dom F"};
}

Outcome ac3_si_clique() {
  const auto start = Clock::now();
  constexpr std::size_t kN = 100;
  constexpr double kP = 5e-4;  // per contact per day
  constexpr int kHorizon = 250;
  std::vector<ContactEdge> edges;
  for (NodeId u = 0; u < kN; ++u) {
    for (NodeId v = u + 1; v < kN; ++v) edges.push_back({u, v, 1, MeetingType::other});
  }
  const ContactNetwork clique(std::vector<Demographics>(kN), std::move(edges));
  SimulationConfig cfg;
  cfg.seed_count = 10;
  cfg.horizon = kHorizon;
  cfg.rng_seed = stream_seed(kMasterSeed, "ac3");
  const auto ens = run_ensemble(clique, DiseaseModel::si(-std::log1p(-kP)), cfg, 2000);
  const auto ode = ode_si(kN, kP, 10, kHorizon, 1e-3);
  double sup = 0.0;
  for (int t = 0; t <= kHorizon; ++t) {
    sup = std::max(sup, std::abs(ens.mean.cumulative[t] - ode.at(t)) / kN);
  }
  const double n = 1e6;
  const auto seir = ode_seir(n, 5e-7, 0.5, 0.25, 100, 100, 300, 0.01);
  const double conservation = seir.max_conservation_error / n;
  const double secs = seconds_since(start);
  return {sup <= 0.05 && conservation <= 1e-9 && secs < 120.0,
          "sup|mean-ode|/N=" + num(sup, 4) + " (<=0.05), seir conservation=" +
              csv_number(conservation, 12) + ", " + num(secs) + " s"};
}

Outcome ac4_logistic() {
  std::vector<double> exact;
  for (int t = 0; t <= 100; ++t) exact.push_back(1000.0 / (1.0 + std::exp(-0.3 * (t - 40.0))));
  const auto fit = fit_logistic(exact);
  const double err = std::max({std::abs(fit.L - 1000) / 1000, std::abs(fit.r - 0.3) / 0.3,
                               std::abs(fit.t0 - 40) / 40});
  std::mt19937_64 gen(stream_seed(kMasterSeed, "ac4"));
  std::normal_distribution<double> noise(0.0, 5.0);
  std::vector<double> t0_err;
  for (int trial = 0; trial < 100; ++trial) {
    auto y = exact;
    for (auto& v : y) v += noise(gen);
    t0_err.push_back(std::abs(fit_logistic(y).t0 - 40.0));
  }
  std::sort(t0_err.begin(), t0_err.end());
  const double median = 0.5 * (t0_err[49] + t0_err[50]);
  return {err <= 1e-6 && median <= 1.0,
          "max relative error=" + csv_number(err, 10) + ", median |t0 error|=" +
              num(median, 4) + " d"};
}

std::map<std::pair<std::string, std::size_t>, double> lead_by(std::span<const LeadRow> rows) {
  std::map<std::pair<std::string, std::size_t>, double> out;
  for (const auto& r : rows) out[{r.strategy, r.seeds}] = r.mean_lead;
  return out;
}

Outcome ac5_table(CsvBundle& csv) {
  const auto start = Clock::now();
  const auto city_cfg = citylike_config();
  const auto star_cfg = starlike_config();
  const auto city = load_or_generate(city_cfg.network);
  const auto star = load_or_generate(star_cfg.network);
  auto rows = run_leadtime(city, city_cfg);
  const auto star_rows = run_leadtime(star, star_cfg);
  rows.insert(rows.end(), star_rows.begin(), star_rows.end());
  std::ostringstream out;
  write_leadtime_csv(rows, out);
  csv["leadtime.csv"] = out.str();

  const auto c = lead_by({rows.data(), rows.size() - star_rows.size()});
  const auto s = lead_by(star_rows);
  bool ok = true;
  double min_gap = INFINITY, max_tt_dt = 0.0, min_star = INFINITY, max_spread = 0.0;
  for (std::size_t seeds : city_cfg.seed_counts) {
    const double topk = c.at({"topk", seeds});
    const double tt = c.at({"tt", seeds});
    const double dt = c.at({"dt", seeds});
    min_gap = std::min({min_gap, tt - topk, dt - topk});
    max_tt_dt = std::max(max_tt_dt, std::abs(tt - dt));
    min_star = std::min(min_star, s.at({"topk", seeds}) - (s.at({"tt", seeds}) - 3.0));
  }
  for (const auto* table : {&c, &s}) {
    for (const auto& name : city_cfg.strategies) {
      double lo = INFINITY, hi = -INFINITY;
      for (std::size_t seeds : city_cfg.seed_counts) {
        lo = std::min(lo, table->at({name, seeds}));
        hi = std::max(hi, table->at({name, seeds}));
      }
      max_spread = std::max(max_spread, hi - lo);
    }
  }
  // NaN means some cell had no usable run; the comparisons then fail.
  ok = min_gap >= 3.0 && max_tt_dt <= 2.0 && min_star >= 0.0 && max_spread <= 3.0;
  const double secs = seconds_since(start);
  ok = ok && secs < 900.0;
  return {ok, "citylike min(TT,DT)-TopK=" + num(min_gap) + " d (>=3), |TT-DT|<=" +
                  num(max_tt_dt) + " d (<=2); starlike TopK-(TT-3) min=" + num(min_star) +
                  " d (>=0); max seed-count spread=" + num(max_spread) + " d (<=3); " +
                  num(secs, 1) + " s"};
}

Outcome ac6_fano(CsvBundle& csv) {
  auto cfg = citylike_config();
  cfg.strategies = {"dt"};
  const auto net = load_or_generate(cfg.network);
  const std::vector<double> sizes{0.01, 0.02, 0.05, 0.1, 0.2};
  const auto rows = run_fano(net, cfg, sizes);
  std::ostringstream out;
  write_fano_csv(rows, out);
  csv["fano.csv"] = out.str();
  const double v1 = rows.front().variance, v20 = rows.back().variance;
  return {rows.size() >= 5 && v20 < v1,
          "variance 1%=" + num(v1) + ", 20%=" + num(v20) + ", sizes=" +
              std::to_string(rows.size())};
}

Outcome ac7_stability(CsvBundle& csv) {
  auto cfg = citylike_config();
  cfg.strategies = {"dt"};
  const auto net = load_or_generate(cfg.network);
  std::vector<int> windows;
  for (int w = 5; w <= cfg.horizon; w += 5) windows.push_back(w);
  const auto curve = run_stability(net, cfg, windows, 1.0);
  std::ostringstream out;
  write_stability_csv(curve, out);
  csv["stability.csv"] = out.str();
  bool ok = curve.stable_from.has_value();
  if (ok) {
    for (const auto& p : curve.points) {
      if (p.window >= *curve.stable_from) ok = ok && p.deviation <= 1.0;
    }
  }
  return {ok, "w*=" + (curve.stable_from ? std::to_string(*curve.stable_from) : "none") +
                  " d of " + std::to_string(cfg.horizon) + ", full lead=" +
                  num(curve.full_lead) + " d"};
}

Outcome ac8_predictor(CsvBundle& csv) {
  std::vector<double> x, y;
  for (int t = 0; t < 100; ++t) {
    const double s = 500.0 / (1.0 + std::exp(-0.2 * (t - 30.0)));
    x.push_back(s);
    y.push_back(7.0 + 0.8 * s - 2e-3 * s * s + 3e-6 * s * s * s);
  }
  const auto exact = fit_poly_predictor(x, y, 50);
  const double want[4] = {7.0, 0.8, -2e-3, 3e-6};
  double coef_err = 0.0;
  for (int i = 0; i < 4; ++i) {
    coef_err = std::max(coef_err, std::abs(exact.coefficients[i] - want[i]) / std::abs(want[i]));
  }

  auto cfg = citylike_config();
  cfg.strategies = {"dt"};
  const auto net = load_or_generate(cfg.network);
  const auto report = run_predict(net, cfg);
  std::ostringstream out;
  write_predict_csv(report, out);
  csv["predict.csv"] = out.str();
  const double final_random = report.random_mean.back();
  const double ratio = report.fit.test_rmse / final_random;
  return {coef_err <= 1e-9 && ratio <= 0.10,
          "exact cubic relative error=" + csv_number(coef_err, 12) + "; held-out RMSE=" +
              num(report.fit.test_rmse) + " = " + num(100 * ratio, 2) +
              "% of final random count (<=10%)"};
}

Outcome ac9_surrogate(CsvBundle& csv) {
  const auto cfg = citylike_config();
  const auto net = load_or_generate(cfg.network);
  // Contact-second rates equivalent to 3.0, 4.2 and 5.5 per contact-minute
  // times 1e-5.
  const std::vector<double> rates{3.0e-5 / 60, 4.2e-5 / 60, 5.5e-5 / 60};
  const auto report = run_surrogate(net, cfg, SurrogateCriteria{}, rates);
  std::ostringstream out;
  write_surrogate_csv(report, out);
  csv["surrogate.csv"] = out.str();
  const auto tiers = run_tiers(net, cfg);
  std::ostringstream tiers_out;
  write_tiers_csv(tiers, tiers_out);
  csv["tiers.csv"] = tiers_out.str();

  const auto& s1 = report.criteria_set;
  const auto& s2 = report.refined.members;
  const bool subset = std::includes(s1.begin(), s1.end(), s2.begin(), s2.end());
  const double lead = report.surrogate_lead.mean_lead;
  const double dt = report.dt_lead.mean_lead;
  double least = NAN, most = -INFINITY;
  for (const auto& t : tiers) {
    if (t.strategy == "distr-demo") least = t.mean_lead;
    if (t.strategy == "tt" || t.strategy == "dt") most = std::max(most, t.mean_lead);
  }
  const bool ok = subset && s2.size() < s1.size() && lead > 0.0 && lead <= dt && most >= least;
  return {ok, "|S'|=" + std::to_string(s1.size()) + ", |S''|=" + std::to_string(s2.size()) +
                  (subset ? " (subset)" : " (NOT subset)") + ", surrogate lead=" + num(lead) +
                  " d, DT lead=" + num(dt) + " d; tiers TT/DT=" + num(most) +
                  " d vs distr-demo=" + num(least) + " d"};
}

void write_bundle(const CsvBundle& csv, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : csv) std::ofstream(dir / name) << text;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path out_dir = argc > 1 ? argv[1] : "acceptance_out";
  int failures = 0;
  auto report = [&](const char* id, const char* title, const Outcome& o) {
    std::printf("[%s] %s %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  };
  auto guarded = [](const std::function<Outcome()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("exception: ") + e.what()};
    }
  };

  const auto start = Clock::now();
  report("AC1", "dominator oracle equivalence", guarded(ac1_dominator_oracle));
  report("AC2", "example graph dominators", guarded(ac2_example_graph));
  report("AC3", "SI clique vs ODE, SEIR conservation", guarded(ac3_si_clique));
  report("AC4", "logistic fit recovery", guarded(ac4_logistic));

  auto experiments = [&](CsvBundle& csv, bool print) {
    const std::pair<const char*, std::function<Outcome()>> steps[] = {
        {"AC5", [&] { return ac5_table(csv); }},
        {"AC6", [&] { return ac6_fano(csv); }},
        {"AC7", [&] { return ac7_stability(csv); }},
        {"AC8", [&] { return ac8_predictor(csv); }},
        {"AC9", [&] { return ac9_surrogate(csv); }},
    };
    const char* titles[] = {"lead time table", "Fano sweep trend", "lead stability",
                            "cubic predictor", "surrogate pipeline"};
    for (std::size_t i = 0; i < std::size(steps); ++i) {
      const auto o = guarded(steps[i].second);
      if (print) report(steps[i].first, titles[i], o);
    }
  };
  CsvBundle first, second;
  experiments(first, true);
  write_bundle(first, out_dir);
  experiments(second, false);
  std::string differing;
  for (const auto& [name, text] : first) {
    if (second[name] != text) differing += " " + name;
  }
  report("AC10", "determinism",
         {differing.empty() && first.size() == 6,
          differing.empty() ? std::to_string(first.size()) + " CSVs byte-identical on rerun"
                            : "differs:" + differing});
  std::printf("acceptance: %d failed, total %.1f s\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
