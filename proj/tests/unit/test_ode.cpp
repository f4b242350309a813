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

#include <cmath>

#include "socsens/ode.hpp"

namespace socsens {
namespace {

TEST_CASE("euler SI converges to the closed form") {
  const double n = 100, beta = 1e-3, i0 = 5;
  const auto traj = ode_si(n, beta, i0, 40.0, 1e-5);
  double worst = 0.0;
  for (double t = 0.0; t <= 40.0; t += 0.5) {
    const double exact = si_logistic(n, beta, i0, t);
    worst = std::max(worst, std::abs(traj.at(t) - exact) / exact);
  }
  CHECK(worst < 1e-4);
  CHECK(traj.at(0.0) == i0);
  CHECK(traj.infected.back() <= n);
}

TEST_CASE("SI trajectory is monotone and bounded") {
  const auto traj = ode_si(1000, 1e-4, 1, 200.0, 0.01);
  for (std::size_t i = 1; i < traj.infected.size(); ++i) {
    CHECK(traj.infected[i] >= traj.infected[i - 1]);
  }
  CHECK(traj.infected.back() == doctest::Approx(1000).epsilon(1e-3));
  CHECK_THROWS(ode_si(10, 1e-3, 0, 1.0, 0.01));
  CHECK_THROWS(ode_si(10, 1e-3, 1, 1.0, 0.1));
}

TEST_CASE("SEIR conserves the population") {
  const double n = 1e5;
  const auto traj = ode_seir(n, 3e-6, 0.5, 0.25, 10, 10, 300.0, 0.01);
  CHECK(traj.max_conservation_error / n <= 1e-9);
  for (std::size_t k = 0; k < traj.s.size(); k += 1000) {
    CHECK(traj.s[k] >= 0.0);
    CHECK(traj.e[k] >= 0.0);
    CHECK(traj.i[k] >= 0.0);
  }
  CHECK(traj.r.back() > traj.r.front());
}

}  // namespace
}  // namespace socsens
