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

#include "socsens/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace socsens {

namespace {

std::size_t step_count(double horizon, double dt) {
  if (!(dt > 0.0 && dt <= 0.01)) throw std::invalid_argument("dt must be in (0, 0.01]");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  return static_cast<std::size_t>(std::llround(horizon / dt));
}

}  // namespace

double SiTrajectory::at(double t) const {
  const double x = std::clamp(t / dt, 0.0, static_cast<double>(infected.size() - 1));
  const auto k = static_cast<std::size_t>(x);
  if (k + 1 >= infected.size()) return infected.back();
  const double w = x - static_cast<double>(k);
  return (1.0 - w) * infected[k] + w * infected[k + 1];
}

SiTrajectory ode_si(double n, double beta, double i0, double horizon, double dt) {
  if (!(i0 > 0.0 && i0 < n)) throw std::invalid_argument("need 0 < i0 < n");
  if (beta < 0.0) throw std::invalid_argument("beta must be non-negative");
  const std::size_t steps = step_count(horizon, dt);
  SiTrajectory out;
  out.dt = dt;
  out.infected.resize(steps + 1);
  double I = i0;
  out.infected[0] = I;
  for (std::size_t k = 1; k <= steps; ++k) {
    I += dt * beta * (n - I) * I;
    out.infected[k] = I;
  }
  return out;
}

double si_logistic(double n, double beta, double i0, double t) {
  return n / (1.0 + ((n - i0) / i0) * std::exp(-beta * n * t));
}

SeirTrajectory ode_seir(double n, double beta, double alpha, double gamma,
                        double e0, double i0, double horizon, double dt) {
  if (e0 < 0.0 || i0 < 0.0 || e0 + i0 > n) {
    throw std::invalid_argument("need e0, i0 >= 0 and e0 + i0 <= n");
  }
  if (beta < 0.0 || alpha < 0.0 || gamma < 0.0) {
    throw std::invalid_argument("rates must be non-negative");
  }
  const std::size_t steps = step_count(horizon, dt);
  SeirTrajectory out;
  out.dt = dt;
  for (auto* v : {&out.s, &out.e, &out.i, &out.r}) v->resize(steps + 1);
  double S = n - e0 - i0, E = e0, I = i0, R = 0.0;
  auto record = [&](std::size_t k) {
    out.s[k] = S;
    out.e[k] = E;
    out.i[k] = I;
    out.r[k] = R;
    out.max_conservation_error =
        std::max(out.max_conservation_error, std::abs(S + E + I + R - n));
  };
  record(0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double infection = dt * beta * S * I;
    const double onset = dt * alpha * E;
    const double recovery = dt * gamma * I;
    S -= infection;
    E += infection - onset;
    I += onset - recovery;
    R += recovery;
    record(k);
  }
  return out;
}

}  // namespace socsens
