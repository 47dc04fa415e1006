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

#include "ueks/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "ueks/errors.hpp"
#include "ueks/kernels.hpp"
#include "ueks/large_deviation.hpp"
#include "ueks/numerics.hpp"

namespace ueks {
namespace {

constexpr double kTail = 1e-12;
constexpr std::size_t kScanPoints = 2000;

quadrature_config limit_quadrature() {
  quadrature_config q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-12;
  return q;
}

double open_unit(double u) {
  return std::clamp(u, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

// Largest |d| over [lo, hi], plus any extra candidate values.
double sup_abs(const scalar_fn& d, double lo, double hi, std::initializer_list<double> extra = {}) {
  auto a = [&d](double t) { return std::abs(d(t)); };
  double best = 0.0;
  for (const extremum& e : scan_maximize(a, lo, hi, kScanPoints, 1e-12)) {
    best = std::max(best, e.value);
  }
  for (double v : extra) best = std::max(best, std::abs(v));
  return best;
}

// Three-point Richardson for estimates at theta, theta/2, theta/4 with an
// error expansion in powers of theta.
double extrapolate(const std::array<double, 3>& e) {
  const double r1 = richardson(e[0], e[1], 1);
  const double r2 = richardson(e[1], e[2], 1);
  return richardson(r1, r2, 2);
}

void diagnose(local_coefficient& out) {
  const auto& e = out.estimates;
  const bool monotone = (e[0] <= e[1] && e[1] <= e[2]) || (e[0] >= e[1] && e[1] >= e[2]);
  const double hi = *std::max_element(e.begin(), e.end());
  const double lo = *std::min_element(e.begin(), e.end());
  if (!monotone && hi - lo > 0.01 * std::abs(hi)) out.flags.emplace_back("non-convergence");
  if (lo > 0.0 && hi / lo > 1.5) out.flags.emplace_back("non-quadratic");
}

}  // namespace

alternative_family::alternative_family(std::string id, member_fn member, null_family null)
    : id_(std::move(id)), member_(std::move(member)), null_(null) {}

distribution alternative_family::member(double theta) const {
  if (!(theta >= 0.0)) throw parameter_error(id_ + ": theta must be >= 0");
  return member_(theta);
}

const alternative_family& alternative_family::builtin(std::string_view id) {
  static const auto* reg = [] {
    auto* m = new std::map<std::string, alternative_family, std::less<>>();
    auto add = [m](alternative_family f) { m->emplace(f.id(), std::move(f)); };
    add({"weibull", distribution::weibull_alt, null_family::exponential_scale});
    add({"makeham", distribution::makeham_alt, null_family::exponential_scale});
    add({"normshift", distribution::normal_shift, null_family::symmetric});
    add({"expscale", [](double th) { return distribution::exponential(1.0 + th); },
         null_family::exponential_scale});
    return m;
  }();
  const auto it = reg->find(id);
  if (it == reg->end()) throw registry_error("unknown alternative '" + std::string(id) + "'");
  return it->second;
}

std::span<const std::string_view> alternative_family::builtin_ids() {
  static constexpr std::array<std::string_view, 4> ids{"weibull", "makeham", "normshift",
                                                       "expscale"};
  return ids;
}

double population_limit(std::string_view test_id, const distribution& alt) {
  const kernel_family& fam = builtin_family(test_id);
  const double q_lo = alt.quantile(kTail);
  const double q_hi = alt.quantile(1.0 - kTail);
  const double reach = std::max(std::abs(q_lo), std::abs(q_hi));
  auto F = [&alt](double x) { return alt.cdf(x); };
  auto S = [&alt](double x) { return alt.survival(x); };
  const quadrature_config quad = limit_quadrature();

  if (test_id == "desu") {
    auto d = [&](double x) { return S(0.5 * x) * S(0.5 * x) - S(x); };
    return sup_abs(d, std::max(0.0, q_lo), 2.0 * q_hi);
  }
  if (test_id == "angus") {
    auto d = [&](double x) { return S(2.0 * x) - S(x) * S(x); };
    return sup_abs(d, std::max(0.0, q_lo), q_hi);
  }
  if (test_id == "puri-rubin") {
    auto d = [&](double t) {
      auto inner = [&](double u) {
        const double y = alt.quantile(open_unit(u));
        return F(y + t) - F(y - t);
      };
      return integrate(inner, 0.0, 1.0, quad).value - F(t);
    };
    return sup_abs(d, 0.0, q_hi - q_lo);
  }
  if (test_id == "symmetry-h") {
    auto delta = [&](double t) { return F(t) + F(-t) - 1.0; };
    const double centre =
        integrate([&](double u) { return delta(alt.quantile(open_unit(u))); }, 0.0, 1.0, quad)
            .value;
    auto d = [&](double t) { return delta(t) - centre; };
    // DeltaF vanishes at both infinities, leaving -centre there.
    return sup_abs(d, -reach, reach, {centre});
  }
  if (test_id == "bh") {
    auto d = [&](double x) {
      const double fp = F(x), fm = F(-x);
      return (fp - fm) - (fp * fp - fm * fm);
    };
    return sup_abs(d, 0.0, reach);
  }
  if (test_id == "polya") {
    auto d = [&](double t) {
      auto inner = [&](double u) {
        return F(std::numbers::sqrt2 * t - alt.quantile(open_unit(u)));
      };
      return integrate(inner, 0.0, 1.0, quad).value - F(t);
    };
    return sup_abs(d, -2.0 * reach, 2.0 * reach);
  }
  const distribution& ref = fam.null();
  const double lo = std::min(q_lo, ref.quantile(kTail));
  const double hi = std::max(q_hi, ref.quantile(1.0 - kTail));
  if (test_id == "max-kernel") {
    auto d = [&](double t) {
      const double a = F(t), b = ref.cdf(t);
      return a * a - b * b;
    };
    return sup_abs(d, lo, hi);
  }
  // kolmogorov
  return sup_abs([&](double t) { return F(t) - ref.cdf(t); }, lo, hi);
}

local_coefficient local_slope_coeff(std::string_view test_id, const alternative_family& alt) {
  const double c = ld_leading_coeff(builtin_family(test_id)).leading_coeff;
  // The family's theta = 0 member has to be a null of the test, otherwise
  // b(theta) does not vanish and the local slope is meaningless.
  if (population_limit(test_id, alt.member(0.0)) > 1e-8) {
    throw parameter_error("alternative '" + alt.id() + "' does not start from a null of '" +
                          std::string(test_id) + "'");
  }
  local_coefficient out;
  for (std::size_t i = 0; i < kLocalThetas.size(); ++i) {
    const double th = kLocalThetas[i];
    const double b = population_limit(test_id, alt.member(th));
    out.estimates[i] = 2.0 * c * b * b / (th * th);
  }
  out.coeff = extrapolate(out.estimates);
  diagnose(out);
  return out;
}

local_coefficient local_kl_coeff(const alternative_family& alt) {
  local_coefficient out;
  for (std::size_t i = 0; i < kLocalThetas.size(); ++i) {
    const double th = kLocalThetas[i];
    out.estimates[i] = 2.0 * min_kl_to_null(alt.member(th), alt.null()).divergence / (th * th);
  }
  out.coeff = extrapolate(out.estimates);
  diagnose(out);
  return out;
}

efficiency_report local_efficiency(std::string_view test_id, const alternative_family& alt) {
  const local_coefficient slope = local_slope_coeff(test_id, alt);
  const local_coefficient kl = local_kl_coeff(alt);
  if (!(kl.coeff > 0.0)) {
    throw indeterminate_error("local efficiency of '" + std::string(test_id) + "' against '" +
                              alt.id() + "': the alternative does not leave the null family");
  }
  efficiency_report r;
  r.test_id = test_id;
  r.alt_id = alt.id();
  r.slope_coeff = slope.coeff;
  r.kl_coeff = kl.coeff;
  r.efficiency = slope.coeff / kl.coeff;
  r.slope_estimates = slope.estimates;
  r.kl_estimates = kl.estimates;
  for (const auto& f : slope.flags) r.flags.push_back("slope-" + f);
  for (const auto& f : kl.flags) r.flags.push_back("kl-" + f);
  if (r.efficiency > 1.02) r.flags.emplace_back("exceeds-bahadur-bound");
  return r;
}

}  // namespace ueks
