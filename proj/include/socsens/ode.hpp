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

#ifndef SOCSENS_ODE_HPP
#define SOCSENS_ODE_HPP

#include <vector>

namespace socsens {

// Deterministic mass-action reference models, integrated with fixed-step
// forward Euler. Values are stored at every grid point t = i * dt.

struct SiTrajectory {
  double dt = 0.0;
  std::vector<double> infected;

  double time(std::size_t i) const { return static_cast<double>(i) * dt; }
  // Linear interpolation between grid points.
  double at(double t) const;
};

// dI/dt = beta (N - I) I. Requires 0 < i0 < n and 0 < dt <= 0.01.
SiTrajectory ode_si(double n, double beta, double i0, double horizon, double dt);

// Closed form of the SI equation: N / (1 + ((N - i0) / i0) exp(-beta N t)).
double si_logistic(double n, double beta, double i0, double t);

struct SeirTrajectory {
  double dt = 0.0;
  std::vector<double> s, e, i, r;
  // Largest |S + E + I + R - N| seen at any step.
  double max_conservation_error = 0.0;

  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
};

// dS = -b S I, dE = b S I - a E, dI = a E - g I, dR = g I, with S0 = n - e0 - i0.
SeirTrajectory ode_seir(double n, double beta, double alpha, double gamma,
                        double e0, double i0, double horizon, double dt);

}  // namespace socsens

#endif  // SOCSENS_ODE_HPP
