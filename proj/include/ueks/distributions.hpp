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

#ifndef UEKS_DISTRIBUTIONS_HPP_
#define UEKS_DISTRIBUTIONS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ueks/numerics.hpp"
#include "ueks/sample.hpp"

namespace ueks {

enum class dist_kind {
  exponential,   // rate
  uniform,       // [a, b]
  normal,        // mean, sd
  normal_shift,  // N(theta, 1)
  weibull_alt,   // survival exp(-x^(1+theta))
  makeham_alt,   // hazard 1 + theta(1 - e^-x)
};

enum class eval_kind { pdf, cdf, survival, quantile };

// Immutable value type describing a continuous law. A distribution can be
// mirrored into the symmetric mixture (f(x) + f(-x))/2.
class distribution {
 public:
  static distribution exponential(double rate = 1.0);
  static distribution uniform(double a, double b);
  static distribution standard_normal();
  static distribution normal(double mean, double sd);
  static distribution normal_shift(double theta);
  static distribution weibull_alt(double theta);
  static distribution makeham_alt(double theta);

  // Compact descriptors: exp:1.0, unif:-1:1, norm, norm:0:2, normshift:0.1,
  // weibull:0.05, makeham:0.1; prefix "sym:" for the symmetrised law.
  static distribution parse(std::string_view descriptor);
  std::string descriptor() const;

  distribution symmetrized() const;

  dist_kind kind() const noexcept { return kind_; }
  bool is_symmetrized() const noexcept { return symmetrized_; }
  double param(int i) const noexcept { return i == 0 ? p0_ : p1_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  double survival(double x) const;
  double quantile(double p) const;
  double eval(eval_kind kind, double x) const;

  double lower() const noexcept;
  double upper() const noexcept;

  bool operator==(const distribution&) const = default;

 private:
  distribution(dist_kind kind, double p0, double p1) : kind_(kind), p0_(p0), p1_(p1) {}

  double base_pdf(double x) const;
  double base_log_pdf(double x) const;
  double base_cdf(double x) const;
  double base_survival(double x) const;
  double base_quantile(double p) const;

  dist_kind kind_;
  double p0_;
  double p1_;
  bool symmetrized_ = false;
};

// n independent draws by inversion of a Philox uniform stream keyed by seed.
// Values are returned in draw order.
std::vector<double> draw(const distribution& dist, std::size_t n, std::uint64_t seed,
                         std::uint64_t stream = 0);

// Same draws packaged as a sorted sample with provenance.
sample draw_sample(const distribution& dist, std::size_t n, std::uint64_t seed);

// Quadrature defaults for divergence integrals.
quadrature_config kl_quadrature();

// K(f, g) = integral of f ln(f/g), evaluated in the quantile space of f over
// u in [1e-12, 1 - 1e-12]. Throws divergence_error when g vanishes where f
// does not.
double kl_divergence(const distribution& f, const distribution& g,
                     const quadrature_config& quad = kl_quadrature());

enum class null_family { exponential_scale, symmetric, normal_location_scale };

null_family parse_null_family(std::string_view name);
std::string_view to_string(null_family family);

struct kl_projection {
  double divergence;  // K* = inf over the null family of K(alt, g)
  distribution nearest;
};

// Returns K*, not 2K*.
kl_projection min_kl_to_null(const distribution& alt, null_family family,
                             const quadrature_config& quad = kl_quadrature());

}  // namespace ueks

#endif  // UEKS_DISTRIBUTIONS_HPP_
