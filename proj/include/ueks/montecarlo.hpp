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

#ifndef UEKS_MONTECARLO_HPP_
#define UEKS_MONTECARLO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ueks/distributions.hpp"
#include "ueks/statistics.hpp"

namespace ueks {

inline constexpr std::uint64_t kDefaultKernelBudget = 5'000'000'000ull;

struct simulation_options {
  side which = side::two_sided;
  // 0 means UEKS_THREADS, or the hardware concurrency when that is unset.
  unsigned threads = 0;
  std::uint64_t kernel_budget = kDefaultKernelBudget;
  // Sampling distribution; the test's own null when empty. The statistic's
  // reference df (max-kernel, kolmogorov) stays the family null.
  std::optional<distribution> null;
  bool center = false;
};

unsigned resolve_threads(unsigned requested);

struct null_simulation {
  std::string test_id;
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  side which = side::two_sided;
  distribution null = distribution::standard_normal();
  std::vector<double> values;  // sorted
};

null_simulation simulate_null(std::string_view test_id, std::size_t n, std::size_t reps,
                              std::uint64_t seed, const simulation_options& options = {});

// Per-replication values of all three sides, in replication order.
struct side_batch {
  std::vector<double> plus;
  std::vector<double> minus;
  std::vector<double> two_sided;
};

side_batch simulate_sides(std::string_view test_id, std::size_t n, std::size_t reps,
                          std::uint64_t seed, const simulation_options& options = {});

// Upper-alpha order statistic: the value at rank ceil((1 - alpha) reps).
double critical_value(const null_simulation& sim, double alpha);

// (1 + #{sims >= observed}) / (reps + 1).
double p_value(const null_simulation& sim, double observed);

// Number of simulated values strictly above a.
std::size_t exceedances(const null_simulation& sim, double a);

struct rate_point {
  std::size_t n = 0;
  std::size_t exceedances = 0;
  double p_hat = 0.0;
  double rate_hat = 0.0;  // NaN when no exceedance was seen
  bool flagged = false;
};

struct rate_estimate {
  std::string test_id;
  double a = 0.0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<rate_point> points;
  double rate_theory = 0.0;  // c a^2
};

rate_estimate empirical_ld_rate(std::string_view test_id, double a,
                                const std::vector<std::size_t>& n_grid, std::size_t reps,
                                std::uint64_t seed, const simulation_options& options = {});

// Seed used for grid point n in empirical_ld_rate.
std::uint64_t grid_seed(std::uint64_t seed, std::size_t n) noexcept;

}  // namespace ueks

#endif  // UEKS_MONTECARLO_HPP_
