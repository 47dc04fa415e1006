// Copyright 2026 The ueks Authors.
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

#include "ueks/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "ueks/errors.hpp"
#include "ueks/rng.hpp"

namespace ueks {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGridTail = 1e-6;

inline double ind(bool b) { return b ? 1.0 : 0.0; }

inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

quadrature_config projection_quadrature() {
  quadrature_config q;
  q.abs_tol = 1e-12;
  q.rel_tol = 1e-13;
  q.max_segments = 6000;
  return q;
}

void check_t(const kernel_family& fam, double t, const char* fn) {
  if (std::isnan(t) || !fam.interval().contains(t)) {
    std::ostringstream msg;
    msg << fn << ": t = " << t << " outside the parameter interval of " << fam.id() << " ["
        << fam.interval().lo << ", " << fam.interval().hi << "]";
    throw domain_error(msg.str());
  }
}

// Quadrature nodes on very narrow end segments can round onto 0 or 1.
double open_unit(double u) {
  return std::clamp(u, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

// Maps jump locations to quantile space and brackets them with 0 and 1.
std::vector<double> to_u_breaks(const kernel_family& fam, const std::vector<double>& xs) {
  std::vector<double> breaks{0.0, 1.0};
  for (double s : xs) {
    const double u = fam.null().cdf(s);
    if (u > 0.0 && u < 1.0) breaks.push_back(u);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

// Quantile-space breakpoints for integrating functions of s against the null.
std::vector<double> u_breaks(const kernel_family& fam, double t) {
  if (!fam.def().projection_breaks) return {0.0, 1.0};
  return to_u_breaks(fam, fam.def().projection_breaks(t));
}

double mc_projection(const kernel_family& fam, double s, double t) {
  // Degree >= 3: conditional expectation by plain Monte Carlo on a fixed
  // stream, so repeated calls agree exactly.
  constexpr std::size_t kDraws = 200000;
  const int m = fam.degree();
  const counter_stream rng(0x5eed'0f'c0ffeeull, 0);
  std::vector<double> args(static_cast<std::size_t>(m));
  args[0] = s;
  double sum = 0.0;
  std::uint64_t idx = 0;
  for (std::size_t r = 0; r < kDraws; ++r) {
    for (int j = 1; j < m; ++j) args[static_cast<std::size_t>(j)] = fam.null().quantile(rng.uniform(idx++));
    sum += fam.def().kernel(args, t);
  }
  return sum / static_cast<double>(kDraws);
}

kernel_family make_kolmogorov() {
  kernel_family::definition d;
  d.id = "kolmogorov";
  d.degree = 1;
  d.null = distribution::uniform(0.0, 1.0);
  d.interval = {0.0, 1.0};
  d.bound = 1.0;
  d.kernel = [](std::span<const double> x, double t) { return ind(x[0] < t) - t; };
  d.projection = [](double s, double t) { return ind(s < t) - t; };
  d.variance = [](double t) { return t * (1.0 - t); };
  d.projection_breaks = [](double t) { return std::vector<double>{t}; };
  return kernel_family(std::move(d));
}

kernel_family make_max_kernel() {
  kernel_family::definition d;
  d.id = "max-kernel";
  d.null = distribution::uniform(0.0, 1.0);  // t is on the F scale
  d.interval = {0.0, 1.0};
  d.bound = 1.0;
  d.kernel = [](std::span<const double> x, double t) {
    return ind(std::max(x[0], x[1]) < t) - t * t;
  };
  d.projection = [](double s, double t) { return ind(s < t) * t - t * t; };
  d.variance = [](double t) { return t * t * t * (1.0 - t); };
  d.projection_breaks = [](double t) { return std::vector<double>{t}; };
  d.kernel_breaks = [](double, double t) { return std::vector<double>{t}; };
  return kernel_family(std::move(d));
}

kernel_family make_desu() {
  kernel_family::definition d;
  d.id = "desu";
  d.null = distribution::exponential(1.0);
  d.interval = {0.0, kInf};
  d.bound = 1.0;
  d.kernel = [](std::span<const double> x, double t) {
    return 0.5 * (ind(x[0] > t) + ind(x[1] > t)) - ind(std::min(x[0], x[1]) > 0.5 * t);
  };
  d.projection = [](double s, double t) {
    return 0.5 * std::exp(-t) + 0.5 * ind(s > t) - std::exp(-0.5 * t) * ind(s > 0.5 * t);
  };
  d.variance = [](double t) { return 0.25 * std::exp(-t) * -std::expm1(-t); };
  d.projection_breaks = [](double t) { return std::vector<double>{0.5 * t, t}; };
  d.kernel_breaks = [](double, double t) { return std::vector<double>{0.5 * t, t}; };
  return kernel_family(std::move(d));
}

kernel_family make_angus() {
  // Exponential data are mapped to the uniform scale u = 1 - e^-x, on which
  // the lack-of-memory kernel is written.
  kernel_family::definition d;
  d.id = "angus";
  d.null = distribution::exponential(1.0);
  d.interval = {0.0, 1.0};
  d.bound = 1.0;
  d.kernel = [](std::span<const double> x, double t) {
    const double u1 = -std::expm1(-x[0]), u2 = -std::expm1(-x[1]);
    const double r = 2 * t - t * t;
    const double a = ind(u1 < t), b = ind(u2 < t);
    return a + b - a * b - 0.5 * (ind(u1 < r) + ind(u2 < r));
  };
  d.projection = [](double s, double t) {
    const double z = -std::expm1(-s);
    return (1.0 - t) * ind(z < t) + 0.5 * t * t - 0.5 * ind(z < 2 * t - t * t);
  };
  d.variance = [](double t) { return 0.25 * t * (1 - t) * (1 - t) * (2 - t); };
  d.projection_breaks = [](double t) {
    if (t >= 1.0) return std::vector<double>{};
    return std::vector<double>{-std::log1p(-t), -2.0 * std::log1p(-t)};
  };
  d.kernel_breaks = [](double, double t) {
    if (t >= 1.0) return std::vector<double>{};
    return std::vector<double>{-std::log1p(-t), -2.0 * std::log1p(-t)};
  };
  return kernel_family(std::move(d));
}

kernel_family make_puri_rubin() {
  kernel_family::definition d;
  d.id = "puri-rubin";
  d.null = distribution::exponential(1.0);
  d.interval = {0.0, kInf};
  d.bound = 1.0;
  d.kernel = [](std::span<const double> x, double t) {
    return ind(std::abs(x[0] - x[1]) < t) - 0.5 * (ind(x[0] < t) + ind(x[1] < t));
  };
  d.projection = [](double s, double t) {
    return (std::exp(t - s) - 0.5) * ind(s >= t) - std::exp(-t) * (std::exp(-s) - 0.5);
  };
  d.variance = [](double t) {
    const double e = std::exp(-t);
    return e * (1.0 + e - 2.0 * e * e) / 12.0;
  };
  d.projection_breaks = [](double t) { return std::vector<double>{t}; };
  d.kernel_breaks = [](double s, double t) { return std::vector<double>{s - t, s + t, t}; };
  return kernel_family(std::move(d));
}

kernel_family make_symmetry_h() {
  kernel_family::definition d;
  d.id = "symmetry-h";
  d.null = distribution::uniform(-1.0, 1.0);
  d.interval = {-1.0, 1.0};
  d.bound = 1.5;
  d.kernel = [](std::span<const double> x, double t) {
    return 0.5 * (ind(x[0] < t) + ind(x[0] < -t) + ind(x[1] < t) + ind(x[1] < -t) -
                  2.0 * ind(x[0] + x[1] < 0.0) - 1.0);
  };
  // Conditioning on X_1 = z gives P(X_2 < -z) = (1 - z)/2, hence the z - 1 term.
  d.projection = [](double z, double t) {
    return 0.5 * (ind(z < t) + ind(z < -t) + z - 1.0);
  };
  d.variance = [](double t) { return 0.25 * (t * t - std::abs(t) + 1.0 / 3.0); };
  d.projection_breaks = [](double t) { return std::vector<double>{-t, t}; };
  d.kernel_breaks = [](double s, double t) { return std::vector<double>{-t, t, -s}; };
  return kernel_family(std::move(d));
}

kernel_family make_bh() {
  kernel_family::definition d;
  d.id = "bh";
  d.null = distribution::uniform(-1.0, 1.0);
  d.interval = {0.0, 1.0};
  d.bound = 1.0;
  d.kernel = [](std::span<const double> x, double t) {
    return ind(std::abs(std::max(x[0], x[1])) <= t) -
           0.5 * (ind(std::abs(x[0]) <= t) + ind(std::abs(x[1]) <= t));
  };
  d.projection = [](double z, double t) {
    if (z < -t) return 0.5 * t;
    if (z > t) return -0.5 * t;
    return 0.0;
  };
  d.variance = [](double t) { return 0.25 * t * t * (1.0 - std::abs(t)); };
  d.projection_breaks = [](double t) { return std::vector<double>{-t, t}; };
  d.kernel_breaks = [](double s, double t) { return std::vector<double>{-t, t, s}; };
  return kernel_family(std::move(d));
}

kernel_family make_polya() {
  kernel_family::definition d;
  d.id = "polya";
  d.null = distribution::standard_normal();
  d.interval = {-kInf, kInf};
  d.bound = 1.0;
  d.kernel = [](std::span<const double> x, double t) {
    return ind(x[0] + x[1] < t * std::numbers::sqrt2) - 0.5 * (ind(x[0] < t) + ind(x[1] < t));
  };
  d.projection = [](double s, double t) {
    return std_normal_cdf(t * std::numbers::sqrt2 - s) - 0.5 * std_normal_cdf(t) -
           0.5 * ind(s < t);
  };
  // No closed-form variance: variance_at integrates the projection.
  d.projection_breaks = [](double t) { return std::vector<double>{t}; };
  d.kernel_breaks = [](double s, double t) {
    return std::vector<double>{t * std::numbers::sqrt2 - s, t};
  };
  return kernel_family(std::move(d));
}

const std::map<std::string, kernel_family, std::less<>>& registry() {
  static const auto* reg = [] {
    auto* m = new std::map<std::string, kernel_family, std::less<>>();
    for (auto&& fam : {make_max_kernel(), make_desu(), make_angus(), make_puri_rubin(),
                       make_symmetry_h(), make_bh(), make_polya(), make_kolmogorov()}) {
      m->emplace(fam.id(), fam);
    }
    return m;
  }();
  return *reg;
}

}  // namespace

kernel_family::kernel_family(definition def) : def_(std::move(def)) {
  if (def_.degree < 1) throw parameter_error("kernel_family: degree must be >= 1");
  if (!def_.kernel) throw parameter_error("kernel_family: evaluator required");
  if (!(def_.bound > 0)) throw parameter_error("kernel_family: bound must be positive");
  if (!(def_.interval.lo <= def_.interval.hi)) {
    throw parameter_error("kernel_family: empty parameter interval");
  }
}

parameter_interval kernel_family::grid_interval() const {
  parameter_interval g = def_.interval;
  if (!std::isfinite(g.lo)) g.lo = def_.null.quantile(kGridTail);
  if (!std::isfinite(g.hi)) g.hi = def_.null.quantile(1.0 - kGridTail);
  g.lo = std::max(g.lo, def_.interval.lo);
  g.hi = std::min(g.hi, def_.interval.hi);
  return g;
}

double eval_kernel(const kernel_family& fam, std::span<const double> args, double t) {
  if (args.size() != static_cast<std::size_t>(fam.degree())) {
    std::ostringstream msg;
    msg << "eval_kernel: " << fam.id() << " takes " << fam.degree() << " arguments, got "
        << args.size();
    throw arity_error(msg.str());
  }
  check_t(fam, t, "eval_kernel");
  return fam.def().kernel(args, t);
}

double numeric_projection(const kernel_family& fam, double s, double t) {
  check_t(fam, t, "numeric_projection");
  switch (fam.degree()) {
    case 1: {
      const double x[1] = {s};
      return fam.def().kernel(x, t);
    }
    case 2: {
      auto integrand = [&](double u) {
        u = open_unit(u);
        const double x[2] = {s, fam.null().quantile(u)};
        return fam.def().kernel(x, t);
      };
      const auto breaks = fam.def().kernel_breaks
                              ? to_u_breaks(fam, fam.def().kernel_breaks(s, t))
                              : std::vector<double>{0.0, 1.0};
      return integrate_pieces(integrand, breaks, projection_quadrature());
    }
    default:
      return mc_projection(fam, s, t);
  }
}

double projection(const kernel_family& fam, double s, double t) {
  check_t(fam, t, "projection");
  if (fam.has_analytic_projection()) return fam.def().projection(s, t);
  return numeric_projection(fam, s, t);
}

double variance_at(const kernel_family& fam, double t) {
  check_t(fam, t, "variance_at");
  if (fam.has_analytic_variance()) return fam.def().variance(t);
  auto integrand = [&](double u) {
    u = open_unit(u);
    const double p = projection(fam, fam.null().quantile(u), t);
    return p * p;
  };
  return integrate_pieces(integrand, u_breaks(fam, t), projection_quadrature());
}

double numeric_variance(const kernel_family& fam, double t) {
  check_t(fam, t, "numeric_variance");
  auto integrand = [&](double u) {
    u = open_unit(u);
    const double p = numeric_projection(fam, fam.null().quantile(u), t);
    return p * p;
  };
  quadrature_config q = projection_quadrature();
  q.abs_tol = 1e-11;
  return integrate_pieces(integrand, u_breaks(fam, t), q);
}

consistency_report numeric_consistency(const kernel_family& fam, std::span<const double> grid) {
  if (!fam.has_analytic_projection() && !fam.has_analytic_variance()) {
    throw parameter_error("numeric_consistency: " + fam.id() + " has no closed forms");
  }
  static constexpr std::array<double, 10> kProbe{0.05, 0.15, 0.25, 0.35, 0.45,
                                                 0.55, 0.65, 0.75, 0.85, 0.95};
  consistency_report report;
  for (double t : grid) {
    consistency_point pt{t, variance_at(fam, t), numeric_variance(fam, t), 0.0};
    if (fam.has_analytic_projection()) {
      for (double u : kProbe) {
        const double s = fam.null().quantile(u);
        pt.max_projection_gap = std::max(
            pt.max_projection_gap,
            std::abs(fam.def().projection(s, t) - numeric_projection(fam, s, t)));
      }
    }
    report.max_variance_gap =
        std::max(report.max_variance_gap, std::abs(pt.analytic_variance - pt.numeric_variance));
    report.max_projection_gap = std::max(report.max_projection_gap, pt.max_projection_gap);
    report.points.push_back(pt);
  }
  return report;
}

const kernel_family& builtin_family(std::string_view id) {
  const auto& reg = registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw registry_error("unknown test id '" + std::string(id) + "'");
  return it->second;
}

std::span<const std::string_view> builtin_ids() {
  static constexpr std::array<std::string_view, 8> kIds{
      "max-kernel", "desu", "angus", "puri-rubin", "symmetry-h", "bh", "polya", "kolmogorov"};
  return kIds;
}

}  // namespace ueks
