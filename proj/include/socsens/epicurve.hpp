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

#ifndef SOCSENS_EPICURVE_HPP
#define SOCSENS_EPICURVE_HPP

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "socsens/epidemic.hpp"

namespace socsens {

// Raised when a curve cannot be fitted at all (empty or all-zero data,
// rank-deficient regression).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cumulative infections among `members`, days 0..horizon.
Epicurve restrict_epicurve(const Dendrogram& d, std::span<const NodeId> members,
                           int horizon);

enum class FitMethod {
  gauss_newton,       // damped Gauss-Newton from the data-driven start
  grid_then_newton,   // start taken from the (r, t0) grid, then refined
  grid_only,          // refinement failed; coarse grid optimum with L = max
};

// y(t) = L / (1 + exp(-r (t - t0))).
struct LogisticFit {
  double L = 0.0;
  double r = 0.0;
  double t0 = 0.0;
  double rss = 0.0;
  int iterations = 0;
  FitMethod method = FitMethod::gauss_newton;
  // Midpoint outside the observed days, or only the coarse grid succeeded.
  bool low_confidence = false;

  double value(double t) const;
  // Fitted daily incidence, the derivative of value().
  double incidence(double t) const;
};

// Least-squares logistic fit to a cumulative series sampled at days
// 0..size-1. Needs at least 5 points and a positive maximum.
LogisticFit fit_logistic(std::span<const double> cumulative);

// The fitted incidence curve peaks at the logistic midpoint.
inline double peak_time(const LogisticFit& fit) { return fit.t0; }

struct LeadTimeResult {
  double t_sensor = 0.0;
  double t_random = 0.0;
  double lead = 0.0;  // t_random - t_sensor; positive when sensors peak first
};

LeadTimeResult lead_time(std::span<const double> sensor_cumulative,
                         std::span<const double> random_cumulative);

// Mean, sample variance and mean/variance of a set of lead estimates.
struct Dispersion {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;      // NaN when count < 2
  double inverse_fano = 0.0;  // +inf when variance is 0, NaN when undefined
};

Dispersion summarize(std::span<const double> values);

struct LeadOptions {
  // A run whose sensor or reference group has fewer cumulative infections
  // than this is treated as "no outbreak" and counted as a failure.
  std::size_t min_cases = 10;
  // Last observed day; negative means the full horizon.
  int window = -1;
};

struct LeadSample {
  std::vector<double> leads;  // successful runs, in run order
  std::size_t failures = 0;
};

// Per-run lead of `sensors` over `reference` across an evaluation ensemble.
LeadSample evaluate_leads(std::span<const Dendrogram> runs,
                          std::span<const NodeId> sensors,
                          std::span<const NodeId> reference, int horizon,
                          const LeadOptions& opts = {});

struct StabilityPoint {
  int window = 0;
  std::size_t ok = 0;
  std::size_t failures = 0;
  double mean_lead = 0.0;  // NaN when no run could be fitted
  double deviation = 0.0;  // |mean_lead - full-data lead|
};

struct StabilityCurve {
  std::vector<StabilityPoint> points;
  double full_lead = 0.0;
  // First window from which every later window is within tolerance.
  std::optional<int> stable_from;
};

// Lead estimated from data truncated at each window (ascending, in days).
StabilityCurve stability_curve(std::span<const Dendrogram> runs,
                               std::span<const NodeId> sensors,
                               std::span<const NodeId> reference, int horizon,
                               std::span<const int> windows, double tolerance = 1.0,
                               std::size_t min_cases = 10);

// Cubic regression of the reference group's cumulative curve on the sensor
// group's cumulative curve.
struct PolyPrediction {
  std::array<double, 4> coefficients{};  // c0 + c1 x + c2 x^2 + c3 x^3
  std::vector<double> predicted;         // for every day of the series
  std::size_t train_days = 0;
  double train_rmse = 0.0;
  double test_rmse = 0.0;  // days train_days..end

  double operator()(double x) const;
};

PolyPrediction fit_poly_predictor(std::span<const double> sensor_cumulative,
                                  std::span<const double> random_cumulative,
                                  std::size_t train_days);

}  // namespace socsens

#endif  // SOCSENS_EPICURVE_HPP
