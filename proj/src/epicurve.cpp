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

#include "socsens/epicurve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace socsens {

Epicurve restrict_epicurve(const Dendrogram& d, std::span<const NodeId> members,
                           int horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  std::vector<double> cumulative(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (NodeId v : members) {
    const auto day = d.infection_day.at(v);
    if (day != kNotInfected && day <= horizon) cumulative[day] += 1.0;
  }
  for (std::size_t t = 1; t < cumulative.size(); ++t) cumulative[t] += cumulative[t - 1];
  return Epicurve::from_cumulative(std::move(cumulative), members.size());
}

double LogisticFit::value(double t) const {
  return L / (1.0 + std::exp(-r * (t - t0)));
}

double LogisticFit::incidence(double t) const {
  // L r e / (1 + e)^2 written with the logistic s to stay finite far from t0.
  const double s = 1.0 / (1.0 + std::exp(-r * (t - t0)));
  return L * r * s * (1.0 - s);
}

namespace {

constexpr int kMaxIterations = 500;
constexpr double kRelativeTolerance = 1e-10;

struct Params {
  double L, r, t0;
};

double rss_of(std::span<const double> y, const Params& p) {
  double rss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double f = p.L / (1.0 + std::exp(-p.r * (static_cast<double>(i) - p.t0)));
    rss += (y[i] - f) * (y[i] - f);
  }
  return rss;
}

bool admissible(const Params& p, double last_day) {
  return std::isfinite(p.L) && std::isfinite(p.r) && std::isfinite(p.t0) &&
         p.L > 0.0 && p.r > 0.0 && p.t0 >= -0.5 * last_day &&
         p.t0 <= 1.5 * last_day;
}

struct Refined {
  Params p;
  double rss;
  int iterations;
  bool ok;
};

// Gauss-Newton with Levenberg-style diagonal damping. A step is kept only if
// it lowers the residual and stays admissible; otherwise damping grows.
Refined refine(std::span<const double> y, Params p) {
  const double last_day = static_cast<double>(y.size() - 1);
  double rss = rss_of(y, p);
  double lambda = 1e-3;
  double scale = 0.0;
  for (double v : y) scale += v * v;
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double dt = static_cast<double>(i) - p.t0;
      const double s = 1.0 / (1.0 + std::exp(-p.r * dt));
      const double ds = s * (1.0 - s);
      const Eigen::Vector3d j(s, p.L * ds * dt, -p.L * ds * p.r);
      jtj += j * j.transpose();
      jtr += j * (y[i] - p.L * s);
    }
    bool accepted = false;
    while (lambda < 1e16) {
      Eigen::Matrix3d a = jtj;
      for (int d = 0; d < 3; ++d) a(d, d) += lambda * std::max(jtj(d, d), 1e-12);
      const Eigen::Vector3d step = a.ldlt().solve(jtr);
      const Params q{p.L + step(0), p.r + step(1), p.t0 + step(2)};
      if (step.allFinite() && admissible(q, last_day)) {
        const double q_rss = rss_of(y, q);
        if (q_rss <= rss) {
          const double change = (rss - q_rss) / std::max(rss, 1e-300);
          p = q;
          rss = q_rss;
          lambda = std::max(lambda / 10.0, 1e-12);
          accepted = true;
          if (change < kRelativeTolerance || rss <= 1e-28 * scale) {
            return {p, rss, it + 1, true};
          }
          break;
        }
      }
      lambda *= 10.0;
    }
    if (!accepted) break;  // no admissible descent direction left
  }
  return {p, rss, it, admissible(p, last_day)};
}

std::size_t first_at_least(std::span<const double> y, double level) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] >= level) return i;
  }
  return y.size() - 1;
}

double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace

LogisticFit fit_logistic(std::span<const double> y) {
  if (y.size() < 5) throw FitError("logistic fit needs at least 5 points");
  const double ymax = *std::max_element(y.begin(), y.end());
  if (!(ymax > 0.0) || !std::isfinite(ymax)) throw FitError("no infections to fit");
  const double last_day = static_cast<double>(y.size() - 1);

  // Data-driven start: asymptote just above the maximum, midpoint at half
  // maximum, rate from the logit slope between the quartile days.
  Params start{1.05 * ymax, 0.0,
               static_cast<double>(first_at_least(y, 0.5 * ymax))};
  const auto q1 = first_at_least(y, 0.25 * ymax);
  const auto q3 = first_at_least(y, 0.75 * ymax);
  if (q3 > q1) {
    start.r = (logit(y[q3] / start.L) - logit(y[q1] / start.L)) /
              static_cast<double>(q3 - q1);
  }
  if (!(start.r > 0.0) || !std::isfinite(start.r)) start.r = 0.5;

  LogisticFit fit;
  auto finish = [&](const Params& p, double rss, int iterations, FitMethod m) {
    fit.L = p.L;
    fit.r = p.r;
    fit.t0 = p.t0;
    fit.rss = rss;
    fit.iterations = iterations;
    fit.method = m;
    fit.low_confidence = m == FitMethod::grid_only || p.t0 < 0.0 || p.t0 > last_day;
    return fit;
  };

  if (admissible(start, last_day)) {
    const auto g = refine(y, start);
    if (g.ok) return finish(g.p, g.rss, g.iterations, FitMethod::gauss_newton);
  }

  // Coarse grid over (r, t0) with L pinned to the observed maximum.
  Params best{ymax, 0.0, 0.0};
  double best_rss = std::numeric_limits<double>::infinity();
  for (int ri = 0; ri < 60; ++ri) {
    const double r = 0.005 * std::pow(1000.0, ri / 59.0);
    for (int ti = 0; ti <= 200; ++ti) {
      const double t0 = -0.5 * last_day + 2.0 * last_day * ti / 200.0;
      const Params p{ymax, r, t0};
      const double rss = rss_of(y, p);
      if (rss < best_rss) {
        best_rss = rss;
        best = p;
      }
    }
  }
  const auto g = refine(y, best);
  if (g.ok && g.rss <= best_rss) {
    return finish(g.p, g.rss, g.iterations, FitMethod::grid_then_newton);
  }
  return finish(best, best_rss, 0, FitMethod::grid_only);
}

LeadTimeResult lead_time(std::span<const double> sensor_cumulative,
                         std::span<const double> random_cumulative) {
  LeadTimeResult r;
  r.t_sensor = peak_time(fit_logistic(sensor_cumulative));
  r.t_random = peak_time(fit_logistic(random_cumulative));
  r.lead = r.t_random - r.t_sensor;
  return r;
}

Dispersion summarize(std::span<const double> values) {
  Dispersion d;
  d.count = values.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (d.count == 0) {
    d.mean = d.variance = d.inverse_fano = nan;
    return d;
  }
  d.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(d.count);
  if (d.count < 2) {
    d.variance = d.inverse_fano = nan;
    return d;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - d.mean) * (v - d.mean);
  d.variance = ss / static_cast<double>(d.count - 1);
  d.inverse_fano = d.variance == 0.0 ? std::numeric_limits<double>::infinity()
                                     : d.mean / d.variance;
  return d;
}

LeadSample evaluate_leads(std::span<const Dendrogram> runs,
                          std::span<const NodeId> sensors,
                          std::span<const NodeId> reference, int horizon,
                          const LeadOptions& opts) {
  if (sensors.empty() || reference.empty()) {
    throw std::invalid_argument("sensor and reference sets must be non-empty");
  }
  const int last = opts.window < 0 ? horizon : std::min(opts.window, horizon);
  const auto min_cases = static_cast<double>(opts.min_cases);
  LeadSample out;
  for (const auto& d : runs) {
    const auto s = restrict_epicurve(d, sensors, last);
    const auto r = restrict_epicurve(d, reference, last);
    if (s.cumulative.back() < min_cases || r.cumulative.back() < min_cases) {
      ++out.failures;
      continue;
    }
    try {
      const auto fs = fit_logistic(s.cumulative);
      const auto fr = fit_logistic(r.cumulative);
      if (fs.low_confidence || fr.low_confidence) {
        ++out.failures;
        continue;
      }
      out.leads.push_back(peak_time(fr) - peak_time(fs));
    } catch (const FitError&) {
      ++out.failures;
    }
  }
  return out;
}

StabilityCurve stability_curve(std::span<const Dendrogram> runs,
                               std::span<const NodeId> sensors,
                               std::span<const NodeId> reference, int horizon,
                               std::span<const int> windows, double tolerance,
                               std::size_t min_cases) {
  if (!std::is_sorted(windows.begin(), windows.end())) {
    throw std::invalid_argument("windows must be ascending");
  }
  StabilityCurve out;
  const auto full = evaluate_leads(runs, sensors, reference, horizon, {min_cases, -1});
  out.full_lead = summarize(full.leads).mean;
  for (int w : windows) {
    const auto sample = evaluate_leads(runs, sensors, reference, horizon, {min_cases, w});
    StabilityPoint p;
    p.window = w;
    p.ok = sample.leads.size();
    p.failures = sample.failures;
    p.mean_lead = summarize(sample.leads).mean;
    p.deviation = std::abs(p.mean_lead - out.full_lead);
    out.points.push_back(p);
  }
  for (auto it = out.points.rbegin(); it != out.points.rend(); ++it) {
    if (!(it->deviation <= tolerance)) break;
    out.stable_from = it->window;
  }
  return out;
}

double PolyPrediction::operator()(double x) const {
  return coefficients[0] + x * (coefficients[1] + x * (coefficients[2] + x * coefficients[3]));
}

PolyPrediction fit_poly_predictor(std::span<const double> sensor_cumulative,
                                  std::span<const double> random_cumulative,
                                  std::size_t train_days) {
  if (sensor_cumulative.size() != random_cumulative.size()) {
    throw std::invalid_argument("series lengths differ");
  }
  if (train_days < 4 || train_days >= sensor_cumulative.size()) {
    throw std::invalid_argument("train_days must be in [4, series length)");
  }
  const auto x = sensor_cumulative.first(train_days);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  // Fit in a centred, scaled variable; the monomial coefficients in x are
  // recovered afterwards.
  const double centre = 0.5 * (*lo + *hi);
  const double half = 0.5 * (*hi - *lo);
  if (!(half > 0.0)) throw FitError("constant predictor series");

  const auto n = static_cast<Eigen::Index>(train_days);
  Eigen::MatrixXd design(n, 4);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = (x[i] - centre) / half;
    design(i, 0) = 1.0;
    design(i, 1) = z;
    design(i, 2) = z * z;
    design(i, 3) = z * z * z;
    target(i) = random_cumulative[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < 4) throw FitError("rank-deficient cubic design");
  const Eigen::Vector4d a = qr.solve(target);

  PolyPrediction out;
  out.train_days = train_days;
  // sum_j a_j ((x - c)/h)^j expanded in powers of x.
  static constexpr double kBinom[4][4] = {
      {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  for (int m = 0; m < 4; ++m) {
    double c = 0.0;
    for (int j = m; j < 4; ++j) {
      c += a(j) * kBinom[j][m] * std::pow(-centre, j - m) / std::pow(half, j);
    }
    out.coefficients[m] = c;
  }
  double train_ss = 0.0, test_ss = 0.0;
  out.predicted.resize(sensor_cumulative.size());
  for (std::size_t i = 0; i < sensor_cumulative.size(); ++i) {
    const double z = (sensor_cumulative[i] - centre) / half;
    const double y = a(0) + z * (a(1) + z * (a(2) + z * a(3)));
    out.predicted[i] = y;
    const double e = y - random_cumulative[i];
    (i < train_days ? train_ss : test_ss) += e * e;
  }
  out.train_rmse = std::sqrt(train_ss / static_cast<double>(train_days));
  out.test_rmse = std::sqrt(test_ss / static_cast<double>(sensor_cumulative.size() - train_days));
  return out;
}

}  // namespace socsens
