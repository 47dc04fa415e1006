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

#ifndef UEKS_STATISTICS_HPP_
#define UEKS_STATISTICS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueks/distributions.hpp"
#include "ueks/sample.hpp"

namespace ueks {

enum class side { plus, minus, two_sided };

side parse_side(std::string_view name);
std::string_view to_string(side s);

// Left-continuous nondecreasing step function with masses that are integer
// multiples of 1/total: value(t) = (count of mass strictly below t) / total.
class step_function {
 public:
  step_function() = default;

  // One unit of mass per point; equal points merge into a single jump.
  static step_function from_points(std::vector<double> points, std::uint64_t total);
  // Points with integer weights; points need not be sorted.
  static step_function from_weighted(std::vector<std::pair<double, std::uint64_t>> points,
                                     std::uint64_t total);

  double operator()(double t) const noexcept;     // mass < t
  double right_limit(double t) const noexcept;    // mass <= t

  std::span<const double> locations() const noexcept { return locations_; }
  // cumulative()[i] is the mass at or below locations()[i].
  std::span<const std::uint64_t> cumulative() const noexcept { return cumulative_; }
  std::uint64_t total() const noexcept { return total_; }
  std::size_t jumps() const noexcept { return locations_.size(); }

 private:
  std::vector<double> locations_;
  std::vector<std::uint64_t> cumulative_;
  std::uint64_t total_ = 1;
};

using kernel_fn = std::function<double(std::span<const double>)>;

inline constexpr std::uint64_t kDefaultUdfCap = 100'000'000;

// C(n, m), throwing size_error on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t m);

step_function build_edf(const sample& s);

// U-empirical df of h over all m-subsets. Throws size_error when C(n, m)
// exceeds `cap`.
step_function build_udf(const sample& s, const kernel_fn& h, int m,
                        std::uint64_t cap = kDefaultUdfCap);

enum class attainment { at_point, right_limit, left_limit };

struct sup_result {
  double value = 0.0;
  double argmax_t = 0.0;
  attainment attained = attainment::at_point;
};

// Exact sup over t of A - B (plus), B - A (minus) or |A - B| (two-sided).
sup_result sup_diff(const step_function& a, const step_function& b, side s);

// Exact sup of A - G, G - A or |A - G| for a continuous nondecreasing G.
sup_result sup_against(const step_function& a, const scalar_fn& g, side s);

struct stat_result {
  std::string test_id;
  side which = side::two_sided;
  std::size_t n = 0;
  double value = 0.0;
  double argmax_t = 0.0;
};

struct statistic_options {
  // Reference law F for max-kernel (G = F^2) and kolmogorov (G = F).
  // Defaults to the family's null.
  std::optional<distribution> reference;
  // Polya: subtract the sample mean first (changes the null distribution).
  bool center = false;
  std::uint64_t udf_cap = kDefaultUdfCap;
};

struct side_values {
  sup_result plus;
  sup_result minus;
  const sup_result& two_sided() const noexcept {
    return minus.value > plus.value ? minus : plus;
  }
  const sup_result& get(side s) const noexcept {
    return s == side::plus ? plus : s == side::minus ? minus : two_sided();
  }
};

// Reusable evaluator for one test id; holds scratch buffers, so one instance
// per thread.
class statistic_evaluator {
 public:
  explicit statistic_evaluator(std::string_view test_id, statistic_options options = {});

  // `sorted` must be strictly increasing.
  side_values evaluate(std::span<const double> sorted);

  const std::string& test_id() const noexcept { return test_id_; }

 private:
  side_values desu(std::span<const double> x);
  side_values pairwise(std::span<const double> x, bool absolute_difference);
  side_values angus(std::span<const double> x);
  side_values symmetry_h(std::span<const double> x);
  side_values bh(std::span<const double> x);
  side_values max_kernel(std::span<const double> x);
  side_values kolmogorov(std::span<const double> x);

  std::string test_id_;
  statistic_options options_;
  distribution reference_;
  std::vector<double> hvals_;
  std::vector<double> locs_;
  std::vector<std::uint64_t> cums_;
  std::vector<std::pair<double, std::uint64_t>> weighted_;
  std::vector<double> centered_;
  std::vector<double> abs_sorted_;
  std::vector<std::uint64_t> abs_cums_;
};

stat_result compute_statistic(std::string_view test_id, const sample& s, side which,
                              const statistic_options& options = {});

}  // namespace ueks

#endif  // UEKS_STATISTICS_HPP_
