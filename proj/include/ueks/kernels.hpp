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

#ifndef UEKS_KERNELS_HPP_
#define UEKS_KERNELS_HPP_

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueks/distributions.hpp"

namespace ueks {

// Closed interval of kernel parameters; ends may be infinite.
struct parameter_interval {
  double lo;
  double hi;
  bool contains(double t) const noexcept { return t >= lo && t <= hi; }
};

// A t-indexed family of bounded symmetric kernels Phi(x_1..x_m; t), centred
// under `null` for every t. Projection and variance are optional closed
// forms; without them the numeric routines below are used.
class kernel_family {
 public:
  using evaluator = std::function<double(std::span<const double>, double)>;
  using projection_fn = std::function<double(double, double)>;
  using variance_fn = std::function<double(double)>;
  // Points s where the projection phi(s; t) may jump, for a given t.
  using breakpoints_fn = std::function<std::vector<double>(double)>;
  // Points x where Phi(s, x; t) may jump as a function of its second
  // argument, for given s and t (degree two only).
  using kernel_breaks_fn = std::function<std::vector<double>(double, double)>;

  struct definition {
    std::string id;
    int degree = 2;
    evaluator kernel;
    parameter_interval interval{0.0, 1.0};
    distribution null = distribution::standard_normal();
    double bound = 1.0;
    projection_fn projection;
    variance_fn variance;
    breakpoints_fn projection_breaks;
    kernel_breaks_fn kernel_breaks;
  };

  explicit kernel_family(definition def);

  const std::string& id() const noexcept { return def_.id; }
  int degree() const noexcept { return def_.degree; }
  const parameter_interval& interval() const noexcept { return def_.interval; }
  const distribution& null() const noexcept { return def_.null; }
  double bound() const noexcept { return def_.bound; }
  bool has_analytic_projection() const noexcept { return bool(def_.projection); }
  bool has_analytic_variance() const noexcept { return bool(def_.variance); }

  // Parameter range used for scans: infinite ends are replaced by the null
  // quantiles at 1e-6 and 1 - 1e-6.
  parameter_interval grid_interval() const;

  const definition& def() const noexcept { return def_; }

 private:
  definition def_;
};

double eval_kernel(const kernel_family& fam, std::span<const double> args, double t);

// phi(s; t) = E[Phi(s, X_2, .., X_m; t)] under the null.
double projection(const kernel_family& fam, double s, double t);
double numeric_projection(const kernel_family& fam, double s, double t);

// sigma^2(t) = E[phi^2(X; t)] under the null.
double variance_at(const kernel_family& fam, double t);
// Same integral with the projection itself computed numerically.
double numeric_variance(const kernel_family& fam, double t);

struct consistency_point {
  double t;
  double analytic_variance;
  double numeric_variance;
  double max_projection_gap;  // over a fixed set of s values
};

struct consistency_report {
  std::vector<consistency_point> points;
  double max_variance_gap = 0.0;
  double max_projection_gap = 0.0;
  double max_discrepancy() const noexcept {
    return max_variance_gap > max_projection_gap ? max_variance_gap : max_projection_gap;
  }
};

// Compares the registered closed forms against the numeric routines.
consistency_report numeric_consistency(const kernel_family& fam,
                                       std::span<const double> grid);

// Built-in families: max-kernel, desu, angus, puri-rubin, symmetry-h, bh,
// polya and the degree-one kolmogorov family.
const kernel_family& builtin_family(std::string_view id);
std::span<const std::string_view> builtin_ids();

}  // namespace ueks

#endif  // UEKS_KERNELS_HPP_
