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

#include "ueks/large_deviation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ueks/errors.hpp"
#include "ueks/numerics.hpp"

namespace ueks {
namespace {

// x ln(x / y) with 0 ln 0 = 0.
double xlogxy(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(x / y);
}

}  // namespace

double kolmogorov_f(double a, double t) {
  if (!(a > 0.0 && a < 1.0)) throw domain_error("kolmogorov_f: a must lie in (0, 1)");
  if (!(t >= 0.0 && t <= 1.0)) throw domain_error("kolmogorov_f: t must lie in [0, 1]");
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (t > 1.0 - a) return inf;
  if (t == 0.0) return inf;
  const double rest = 1.0 - a - t;
  if (rest <= 0.0) return xlogxy(a + t, t);
  return xlogxy(a + t, t) + xlogxy(rest, 1.0 - t);
}

double kolmogorov_f0(double a) {
  if (!(a > 0.0 && a < 1.0)) throw domain_error("kolmogorov_f0: a must lie in (0, 1)");
  const double hi = 1.0 - a;
  constexpr std::size_t points = 1000;
  const double h = hi / static_cast<double>(points);
  std::size_t best = 1;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= points; ++i) {
    const double t = i == points ? hi : h * static_cast<double>(i);
    const double v = kolmogorov_f(a, t);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo_t = h * static_cast<double>(best - 1);
  const double hi_t = std::min(hi, h * static_cast<double>(best + 1));
  // The left end may be t = 0 where f is infinite; golden section never
  // evaluates the bracket ends except through its final endpoint check.
  auto f = [a](double t) { return t <= 0.0 ? std::numeric_limits<double>::infinity()
                                             : kolmogorov_f(a, t); };
  const extremum e = golden_section_minimize(f, lo_t, hi_t, 1e-10);
  return std::min(e.value, best_val);
}

variance_max maximize_variance(const kernel_family& fam) {
  const parameter_interval iv = fam.grid_interval();
  auto var = [&fam](double t) { return variance_at(fam, t); };
  std::vector<extremum> cands = scan_maximize(var, iv.lo, iv.hi, 1000, 1e-12);
  if (cands.empty() || !(cands.front().value > 0.0)) {
    throw degeneracy_error("variance function of '" + fam.id() + "' vanishes on the grid");
  }
  // Golden section locates a smooth maximum only to about sqrt(eps); finish
  // interior candidates by bisecting on the sign of the derivative.
  const double width = iv.hi - iv.lo;
  const double step = 1e-3 * width / 2.0;
  for (extremum& e : cands) {
    if (e.x - 3 * step > iv.lo && e.x + 3 * step < iv.hi) {
      const double x = polish_stationary_point(var, iv.lo, iv.hi, e.x, step);
      const double v = var(x);
      // At a smooth maximum the two values agree to rounding; prefer the root.
      if (v >= e.value - 1e-14) e = {x, std::max(v, e.value)};
    }
  }
  double best = 0.0;
  for (const extremum& e : cands) best = std::max(best, e.value);
  const extremum* pick = nullptr;
  for (const extremum& e : cands) {
    if (e.value < best - 1e-12) continue;
    if (pick == nullptr || std::abs(e.x) < std::abs(pick->x)) pick = &e;
  }
  return {pick->x, pick->value};
}

rate_function ld_leading_coeff(const kernel_family& fam) {
  const variance_max vm = maximize_variance(fam);
  const double m = fam.degree();
  return {1.0 / (2.0 * m * m * vm.phi0_sq), fam.degree(), vm.phi0_sq, vm.t_star, fam.id()};
}

double arcones_constant(int m, double M) {
  if (m < 1 || !(M > 0.0)) throw parameter_error("arcones_constant: need m >= 1 and M > 0");
  const double md = m;
  return (std::ldexp(1.0, m + 3) * std::pow(md, md) + (2.0 / 3.0) / md) * M;
}

double arcones_bound(long n, double z, int m, double sigma_sq, double M) {
  if (n < 1 || !(z > 0.0) || !(sigma_sq > 0.0)) {
    throw parameter_error("arcones_bound: n, z and sigma_sq must be positive");
  }
  const double md = m;
  const double L = arcones_constant(m, M);
  return 4.0 * std::exp(-static_cast<double>(n) * z * z / (2.0 * md * md * sigma_sq + L * z));
}

double binomial_tail_bound(long n, long N, double tau) {
  if (n < 1 || N < 2 || !(tau > 0.0 && tau < 1.0)) {
    throw parameter_error("binomial_tail_bound: need n >= 1, N >= 2, 0 < tau < 1");
  }
  const double nd = static_cast<double>(n);
  return std::exp(nd * std::log(4.0) - nd * tau * std::log(static_cast<double>(N)));
}

}  // namespace ueks
