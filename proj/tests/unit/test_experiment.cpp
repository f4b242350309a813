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
#include <sstream>

#include "socsens/experiment.hpp"
#include "socsens/rng.hpp"

namespace socsens {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.network.generator = "citylike";
  c.network.nodes = 1500;
  c.network.avg_degree = 20.0;
  c.model = DiseaseModel::seir(2e-6, 0.5, 0.25);
  c.runs = 6;
  c.horizon = 80;
  c.seed_counts = {5};
  c.k = 0.05;
  return c;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

TEST_CASE("config validation and k resolution") {
  auto c = small_config();
  CHECK_NOTHROW(c.validate());
  CHECK(c.resolve_k(1000) == 50);
  c.k = 12;
  CHECK(c.resolve_k(1000) == 12);
  CHECK_THROWS(c.resolve_k(10));
  c.k = 2.5;
  CHECK_THROWS(c.validate());
  c = small_config();
  c.strategies = {"tt", "oracle"};
  CHECK_THROWS(c.validate());
  c = small_config();
  c.seed_counts = {};
  CHECK_THROWS(c.validate());
  c = small_config();
  c.network.generator = "lattice";
  CHECK_THROWS(c.validate());
  CHECK(is_known_strategy("greedy"));
  CHECK_FALSE(is_known_strategy("TopK"));
}

TEST_CASE("lead table layout and determinism") {
  auto c = small_config();
  c.seed_counts = {1, 5};
  const auto net = load_or_generate(c.network);
  const auto rows = run_leadtime(net, c);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].seeds == 1);
  CHECK(rows[0].strategy == "topk");
  CHECK(rows[7].strategy == "dt");
  for (const auto& r : rows) CHECK(r.ok_runs + r.failures == r.runs);
  std::ostringstream a, b;
  write_leadtime_csv(rows, a);
  write_leadtime_csv(run_leadtime(net, c), b);
  CHECK(a.str() == b.str());
  const auto lines = lines_of(a.str());
  CHECK(lines[0] == "network,strategy,seeds,runs,ok_runs,fit_failures,mean_lead,variance");
  CHECK(lines.size() == 9);
}

TEST_CASE("single run marks variance as unavailable") {
  auto c = small_config();
  c.runs = 1;
  c.strategies = {"random"};
  const auto net = load_or_generate(c.network);
  std::ostringstream out;
  write_leadtime_csv(run_leadtime(net, c), out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].substr(lines[1].rfind(',') + 1) == "n/a");
}

TEST_CASE("training and evaluation streams are disjoint") {
  // Every run seed of the training ensemble differs from every evaluation
  // run seed, so selection never sees evaluation draws.
  const std::uint64_t master = 1;
  for (std::size_t seeds : {1u, 5u, 10u}) {
    const auto train = stream_seed(master, "train", seeds);
    const auto eval = stream_seed(master, "eval", seeds);
    for (std::uint64_t i = 0; i < 200; ++i) {
      for (std::uint64_t j = 0; j < 200; ++j) {
        REQUIRE(run_seed(train, i) != run_seed(eval, j));
      }
    }
  }
}

TEST_CASE("fano, stability and predict outputs") {
  auto c = small_config();
  c.strategies = {"dt"};
  c.runs = 8;
  const auto net = load_or_generate(c.network);
  const std::vector<double> sizes{0.01, 0.02, 0.05, 0.1, 0.2};
  std::ostringstream fano;
  write_fano_csv(run_fano(net, c, sizes), fano);
  const auto fl = lines_of(fano.str());
  CHECK(fl[0] == "size,k,runs_ok,mean_lead,variance,inverse_fano");
  CHECK(fl.size() == 6);
  CHECK(fl[1].rfind("0.0100,15,", 0) == 0);

  const std::vector<int> windows{20, 40, 60, 80};
  std::ostringstream stab;
  write_stability_csv(run_stability(net, c, windows), stab);
  const auto sl = lines_of(stab.str());
  CHECK(sl[0] == "window,runs_ok,fit_failures,mean_lead,deviation");
  CHECK(sl.size() == 7);
  CHECK(sl.back().rfind("# stable_from,", 0) == 0);

  const auto p = run_predict(net, c);
  CHECK(p.fit.train_days == 40);
  std::ostringstream pred;
  write_predict_csv(p, pred);
  const auto pl = lines_of(pred.str());
  CHECK(pl[0] == "day,sensor_cumulative,random_cumulative,predicted,split");
  CHECK(pl.size() == 81 + 1 + 2);
}

TEST_CASE("surrogate report") {
  auto c = small_config();
  c.runs = 8;
  const auto net = load_or_generate(c.network);
  const std::vector<double> rates{1.5e-6, 2e-6};
  const auto r = run_surrogate(net, c, SurrogateCriteria{}, rates);
  CHECK(std::includes(r.criteria_set.begin(), r.criteria_set.end(),
                      r.refined.members.begin(), r.refined.members.end()));
  CHECK(r.dt_size == 75);
  std::ostringstream out;
  write_surrogate_csv(r, out);
  const auto lines = lines_of(out.str());
  CHECK(lines[0] == "set,size,ok_runs,fit_failures,mean_lead,variance");
  CHECK(lines[1].rfind("criteria,", 0) == 0);
  CHECK(lines[2].rfind("surrogate,", 0) == 0);
  CHECK(lines[3].rfind("dt,75,", 0) == 0);
}

}  // namespace
}  // namespace socsens
