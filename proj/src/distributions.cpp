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

#include "ueks/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>

#include "ueks/errors.hpp"
#include "ueks/rng.hpp"

namespace ueks {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKlTail = 1e-12;

void require(bool ok, const char* what) {
  if (!ok) throw parameter_error(what);
}

void require_arg(double x, const char* fn) {
  if (std::isnan(x)) throw domain_error(std::string(fn) + ": NaN argument");
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view s, std::string_view whole) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw parse_error("distribution descriptor '" + std::string(whole) +
                      "': bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double std_normal_quantile(double p) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace

distribution distribution::exponential(double rate) {
  require(rate > 0 && std::isfinite(rate), "exponential: rate must be positive");
  return {dist_kind::exponential, rate, 0.0};
}

distribution distribution::uniform(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "uniform: need a < b");
  return {dist_kind::uniform, a, b};
}

distribution distribution::standard_normal() { return {dist_kind::normal, 0.0, 1.0}; }

distribution distribution::normal(double mean, double sd) {
  require(std::isfinite(mean) && sd > 0 && std::isfinite(sd),
          "normal: need finite mean and sd > 0");
  return {dist_kind::normal, mean, sd};
}

distribution distribution::normal_shift(double theta) {
  require(std::isfinite(theta), "normal_shift: theta must be finite");
  return {dist_kind::normal_shift, theta, 0.0};
}

distribution distribution::weibull_alt(double theta) {
  require(theta >= 0 && std::isfinite(theta), "weibull_alt: theta must be >= 0");
  return {dist_kind::weibull_alt, theta, 0.0};
}

distribution distribution::makeham_alt(double theta) {
  require(theta >= 0 && std::isfinite(theta), "makeham_alt: theta must be >= 0");
  return {dist_kind::makeham_alt, theta, 0.0};
}

distribution distribution::symmetrized() const {
  distribution d = *this;
  d.symmetrized_ = true;
  return d;
}

distribution distribution::parse(std::string_view text) {
  std::string_view body = text;
  bool sym = false;
  if (body.starts_with("sym:")) {
    sym = true;
    body.remove_prefix(4);
  }
  const auto parts = split(body, ':');
  const auto& name = parts[0];
  auto arg = [&](std::size_t i) { return parse_number(parts[i], text); };
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi) {
      throw parse_error("distribution descriptor '" + std::string(text) +
                        "': wrong number of parameters");
    }
  };
  distribution d = [&] {
    if (name == "exp") {
      arity(0, 1);
      return exponential(parts.size() > 1 ? arg(1) : 1.0);
    }
    if (name == "unif") {
      arity(2, 2);
      return uniform(arg(1), arg(2));
    }
    if (name == "norm") {
      arity(0, 2);
      if (parts.size() == 1) return standard_normal();
      if (parts.size() == 2) return normal(arg(1), 1.0);
      return normal(arg(1), arg(2));
    }
    if (name == "normshift") {
      arity(1, 1);
      return normal_shift(arg(1));
    }
    if (name == "weibull") {
      arity(1, 1);
      return weibull_alt(arg(1));
    }
    if (name == "makeham") {
      arity(1, 1);
      return makeham_alt(arg(1));
    }
    throw parse_error("unknown distribution '" + std::string(text) + "'");
  }();
  return sym ? d.symmetrized() : d;
}

std::string distribution::descriptor() const {
  std::string s = symmetrized_ ? "sym:" : "";
  switch (kind_) {
    case dist_kind::exponential:
      return s + "exp:" + format_number(p0_);
    case dist_kind::uniform:
      return s + "unif:" + format_number(p0_) + ":" + format_number(p1_);
    case dist_kind::normal:
      if (p0_ == 0.0 && p1_ == 1.0) return s + "norm";
      return s + "norm:" + format_number(p0_) + ":" + format_number(p1_);
    case dist_kind::normal_shift:
      return s + "normshift:" + format_number(p0_);
    case dist_kind::weibull_alt:
      return s + "weibull:" + format_number(p0_);
    case dist_kind::makeham_alt:
      return s + "makeham:" + format_number(p0_);
  }
  return s;
}

double distribution::base_log_pdf(double x) const {
  switch (kind_) {
    case dist_kind::exponential:
      return x < 0 ? -kInf : std::log(p0_) - p0_ * x;
    case dist_kind::uniform:
      return (x < p0_ || x > p1_) ? -kInf : -std::log(p1_ - p0_);
    case dist_kind::normal: {
      const double z = (x - p0_) / p1_;
      return -0.5 * z * z - std::log(p1_) - 0.5 * std::log(2 * std::numbers::pi);
    }
    case dist_kind::normal_shift: {
      const double z = x - p0_;
      return -0.5 * z * z - 0.5 * std::log(2 * std::numbers::pi);
    }
    case dist_kind::weibull_alt: {
      if (x < 0) return -kInf;
      const double k = 1.0 + p0_;
      if (x == 0) return p0_ == 0 ? 0.0 : -kInf;
      return std::log(k) + p0_ * std::log(x) - std::pow(x, k);
    }
    case dist_kind::makeham_alt: {
      if (x < 0) return -kInf;
      const double w = x + std::expm1(-x);  // x - (1 - e^-x)
      return std::log1p(-p0_ * std::expm1(-x)) - x - p0_ * w;
    }
  }
  return -kInf;
}

double distribution::base_pdf(double x) const { return std::exp(base_log_pdf(x)); }

double distribution::base_cdf(double x) const {
  switch (kind_) {
    case dist_kind::exponential:
      return x <= 0 ? 0.0 : -std::expm1(-p0_ * x);
    case dist_kind::uniform:
      return x <= p0_ ? 0.0 : x >= p1_ ? 1.0 : (x - p0_) / (p1_ - p0_);
    case dist_kind::normal:
      return 0.5 * std::erfc(-(x - p0_) / (p1_ * std::numbers::sqrt2));
    case dist_kind::normal_shift:
      return 0.5 * std::erfc(-(x - p0_) / std::numbers::sqrt2);
    case dist_kind::weibull_alt:
      return x <= 0 ? 0.0 : -std::expm1(-std::pow(x, 1.0 + p0_));
    case dist_kind::makeham_alt:
      return x <= 0 ? 0.0 : -std::expm1(-(x + p0_ * (x + std::expm1(-x))));
  }
  return 0.0;
}

double distribution::base_survival(double x) const {
  switch (kind_) {
    case dist_kind::exponential:
      return x <= 0 ? 1.0 : std::exp(-p0_ * x);
    case dist_kind::uniform:
      return x <= p0_ ? 1.0 : x >= p1_ ? 0.0 : (p1_ - x) / (p1_ - p0_);
    case dist_kind::normal:
      return 0.5 * std::erfc((x - p0_) / (p1_ * std::numbers::sqrt2));
    case dist_kind::normal_shift:
      return 0.5 * std::erfc((x - p0_) / std::numbers::sqrt2);
    case dist_kind::weibull_alt:
      return x <= 0 ? 1.0 : std::exp(-std::pow(x, 1.0 + p0_));
    case dist_kind::makeham_alt:
      return x <= 0 ? 1.0 : std::exp(-(x + p0_ * (x + std::expm1(-x))));
  }
  return 1.0;
}

double distribution::base_quantile(double p) const {
  switch (kind_) {
    case dist_kind::exponential:
      return -std::log1p(-p) / p0_;
    case dist_kind::uniform:
      return p0_ + p * (p1_ - p0_);
    case dist_kind::normal:
      return p0_ + p1_ * std_normal_quantile(p);
    case dist_kind::normal_shift:
      return p0_ + std_normal_quantile(p);
    case dist_kind::weibull_alt:
      return std::pow(-std::log1p(-p), 1.0 / (1.0 + p0_));
    case dist_kind::makeham_alt: {
      // Solve x + theta(x - 1 + e^-x) = y; the left side is convex and
      // increasing, so Newton from x = y decreases monotonically to the root.
      const double y = -std::log1p(-p);
      if (p0_ == 0.0) return y;
      double x = y;
      for (int iter = 0; iter < 100; ++iter) {
        const double g = x + p0_ * (x + std::expm1(-x)) - y;
        const double dg = 1.0 - p0_ * std::expm1(-x);
        const double step = g / dg;
        x -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, x)) break;
      }
      return std::max(x, 0.0);
    }
  }
  return 0.0;
}

double distribution::pdf(double x) const {
  require_arg(x, "pdf");
  if (!symmetrized_) return base_pdf(x);
  return 0.5 * (base_pdf(x) + base_pdf(-x));
}

double distribution::log_pdf(double x) const {
  require_arg(x, "log_pdf");
  if (!symmetrized_) return base_log_pdf(x);
  const double a = base_log_pdf(x), b = base_log_pdf(-x);
  const double m = std::max(a, b);
  if (m == -kInf) return -kInf;
  return m + std::log(0.5 * (std::exp(a - m) + std::exp(b - m)));
}

double distribution::cdf(double x) const {
  require_arg(x, "cdf");
  if (!symmetrized_) return base_cdf(x);
  return 0.5 * (base_cdf(x) + base_survival(-x));
}

double distribution::survival(double x) const {
  require_arg(x, "survival");
  if (!symmetrized_) return base_survival(x);
  return 0.5 * (base_survival(x) + base_cdf(-x));
}

double distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw domain_error("quantile: probability must lie in (0, 1)");
  if (!symmetrized_) return base_quantile(p);
  double lo = std::min(base_quantile(std::min(p, 0.5)), -base_quantile(std::max(p, 0.5)));
  double hi = std::max(base_quantile(std::max(p, 0.5)), -base_quantile(std::min(p, 0.5)));
  lo = std::min(lo, hi) - 1.0;
  hi = hi + 1.0;
  auto fn = [&](double x) { return cdf(x) - p; };
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(
      fn, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

double distribution::eval(eval_kind kind, double x) const {
  switch (kind) {
    case eval_kind::pdf:
      return pdf(x);
    case eval_kind::cdf:
      return cdf(x);
    case eval_kind::survival:
      return survival(x);
    case eval_kind::quantile:
      return quantile(x);
  }
  return 0.0;
}

double distribution::lower() const noexcept {
  double lo = -kInf, hi = kInf;
  switch (kind_) {
    case dist_kind::uniform:
      lo = p0_;
      hi = p1_;
      break;
    case dist_kind::exponential:
    case dist_kind::weibull_alt:
    case dist_kind::makeham_alt:
      lo = 0.0;
      break;
    default:
      break;
  }
  return symmetrized_ ? std::min(lo, -hi) : lo;
}

double distribution::upper() const noexcept {
  double lo = -kInf, hi = kInf;
  if (kind_ == dist_kind::uniform) {
    lo = p0_;
    hi = p1_;
  } else if (kind_ == dist_kind::exponential || kind_ == dist_kind::weibull_alt ||
             kind_ == dist_kind::makeham_alt) {
    lo = 0.0;
  }
  return symmetrized_ ? std::max(hi, -lo) : hi;
}

std::vector<double> draw(const distribution& dist, std::size_t n, std::uint64_t seed,
                         std::uint64_t stream) {
  if (n == 0) throw domain_error("draw: n must be positive");
  std::vector<double> out(n);
  counter_stream(seed, stream).fill_uniform(0, out.data(), n);
  for (double& u : out) u = dist.quantile(u);
  return out;
}

sample draw_sample(const distribution& dist, std::size_t n, std::uint64_t seed) {
  return sample(draw(dist, n, seed), provenance{seed, dist.descriptor()});
}

quadrature_config kl_quadrature() {
  quadrature_config q;
  q.abs_tol = 1e-10;
  q.rel_tol = 1e-12;
  q.max_segments = 4000;
  return q;
}

double kl_divergence(const distribution& f, const distribution& g,
                     const quadrature_config& quad) {
  auto integrand = [&](double u) {
    const double x = f.quantile(u);
    const double lf = f.log_pdf(x);
    if (lf == -kInf) return 0.0;
    const double lg = g.log_pdf(x);
    if (lg == -kInf) {
      throw divergence_error("kl_divergence: " + g.descriptor() +
                             " vanishes inside the support of " + f.descriptor());
    }
    return lf - lg;
  };
  if (f == g) return 0.0;
  const double v = integrate(integrand, kKlTail, 1.0 - kKlTail, quad).value;
  return std::max(v, 0.0);
}

null_family parse_null_family(std::string_view name) {
  if (name == "exponential-scale") return null_family::exponential_scale;
  if (name == "symmetric") return null_family::symmetric;
  if (name == "normal-location-scale") return null_family::normal_location_scale;
  throw parse_error("unknown null family '" + std::string(name) + "'");
}

std::string_view to_string(null_family family) {
  switch (family) {
    case null_family::exponential_scale:
      return "exponential-scale";
    case null_family::symmetric:
      return "symmetric";
    case null_family::normal_location_scale:
      return "normal-location-scale";
  }
  return "";
}

kl_projection min_kl_to_null(const distribution& alt, null_family family,
                             const quadrature_config& quad) {
  switch (family) {
    case null_family::exponential_scale: {
      constexpr double lo = -5.0, hi = 5.0;
      auto objective = [&](double log_rate) {
        return kl_divergence(alt, distribution::exponential(std::exp(log_rate)), quad);
      };
      const extremum best = golden_section_minimize(objective, lo, hi, 1e-10);
      if (best.x <= lo + 1e-6 || best.x >= hi - 1e-6) {
        throw optimization_error("min_kl_to_null: exponential-scale minimiser at the edge of "
                                 "ln(rate) in [-5, 5] for " + alt.descriptor() +
                                 " (ln rate " + std::to_string(best.x) + ")");
      }
      return {best.value, distribution::exponential(std::exp(best.x))};
    }
    case null_family::symmetric: {
      const distribution bar = alt.symmetrized();
      return {kl_divergence(alt, bar, quad), bar};
    }
    case null_family::normal_location_scale: {
      // The Gaussian minimiser of K(f, .) matches the first two moments of f.
      auto q = [&](double u) { return alt.quantile(u); };
      const double mean = integrate(q, kKlTail, 1.0 - kKlTail, quad).value;
      const double second = integrate(
          [&](double u) {
            const double d = alt.quantile(u) - mean;
            return d * d;
          },
          kKlTail, 1.0 - kKlTail, quad).value;
      const distribution g = distribution::normal(mean, std::sqrt(second));
      return {kl_divergence(alt, g, quad), g};
    }
  }
  throw parameter_error("min_kl_to_null: unknown family");
}

}  // namespace ueks
