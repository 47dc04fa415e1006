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

#include "ueks/montecarlo.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ueks/errors.hpp"
#include "ueks/large_deviation.hpp"

namespace ueks {
namespace {

simulation_options threads(unsigned t) {
  simulation_options o;
  o.threads = t;
  return o;
}

TEST(SimulateTest, IndependentOfThreadCount) {
  for (auto id : {"desu", "bh", "kolmogorov"}) {
    const auto a = simulate_null(id, 30, 400, 5, threads(1));
    const auto b = simulate_null(id, 30, 400, 5, threads(3));
    const auto c = simulate_null(id, 30, 400, 5, threads(1));
    EXPECT_EQ(a.values, b.values) << id;
    EXPECT_EQ(a.values, c.values) << id;
    EXPECT_TRUE(std::is_sorted(a.values.begin(), a.values.end()));
  }
}

TEST(SimulateTest, DesuScaleFree) {
  simulation_options o1, o5;
  o1.null = distribution::exponential(1);
  o5.null = distribution::exponential(5);
  const auto a = simulate_sides("desu", 100, 1000, 11, o1);
  const auto b = simulate_sides("desu", 100, 1000, 11, o5);
  EXPECT_EQ(a.two_sided, b.two_sided);
  EXPECT_EQ(a.plus, b.plus);
}

TEST(SimulateTest, DesuMeanDecreasesWithN) {
  double prev = 1;
  for (std::size_t n : {50, 100, 200}) {
    const auto s = simulate_null("desu", n, 2000, 3);
    double mean = 0;
    for (double v : s.values) mean += v;
    mean /= static_cast<double>(s.values.size());
    EXPECT_GT(mean, 0.0);
    EXPECT_LT(mean, prev);
    prev = mean;
  }
}

TEST(SimulateTest, Preconditions) {
  EXPECT_THROW(simulate_null("desu", 30, 50, 1), parameter_error);
  EXPECT_THROW(simulate_null("desu", 1, 200, 1), domain_error);
  simulation_options o;
  o.kernel_budget = 1000;
  EXPECT_THROW(simulate_null("desu", 100, 200, 1, o), size_error);
  EXPECT_THROW(simulate_null("nope", 30, 200, 1), registry_error);
}

TEST(SandwichTest, HoldsOnEveryBatch) {
  for (auto id : {"desu", "angus", "symmetry-h", "bh", "max-kernel"}) {
    const auto b = simulate_sides(id, 25, 500, 2);
    for (double a : {0.05, 0.1, 0.2, 0.3}) {
      std::size_t p = 0, m = 0, t = 0;
      for (std::size_t r = 0; r < b.two_sided.size(); ++r) {
        p += b.plus[r] > a;
        m += b.minus[r] > a;
        t += b.two_sided[r] > a;
        EXPECT_EQ(b.two_sided[r], std::max(b.plus[r], b.minus[r]));
      }
      EXPECT_LE(std::max(p, m), t) << id;
      EXPECT_LE(t, p + m) << id;
      EXPECT_LE(p + m, 2 * std::max(p, m)) << id;
    }
  }
}

TEST(CriticalValueTest, OrderStatisticDefinition) {
  const auto s = simulate_null("desu", 40, 10000, 1);
  const double c = critical_value(s, 0.05);
  EXPECT_LE(exceedances(s, c), 500u);
  EXPECT_EQ(c, s.values[9499]);
  EXPECT_EQ(critical_value(s, 0.5), s.values[4999]);
  EXPECT_THROW(critical_value(simulate_null("desu", 40, 100, 1), 0.05), precision_error);
}

TEST(CriticalValueTest, KolmogorovAsymptoticQuantile) {
  const auto s = simulate_null("kolmogorov", 1000, 4000, 1);
  EXPECT_NEAR(std::sqrt(1000.0) * critical_value(s, 0.05), 1.358, 0.03);
}

TEST(PValueTest, Definition) {
  const auto s = simulate_null("desu", 40, 1000, 2);
  const double reps = 1000;
  EXPECT_NEAR(p_value(s, 0.0), 1.0, 1 / (reps + 1));
  EXPECT_DOUBLE_EQ(p_value(s, s.values.back() + 1), 1 / (reps + 1));
  EXPECT_NEAR(p_value(s, s.values[499]), 0.5, 1 / std::sqrt(reps));
}

TEST(RateTest, MonotoneInAAndRangeBound) {
  const auto s = simulate_null("desu", 40, 2000, 8);
  std::size_t prev = s.values.size();
  for (double a = 0.0; a <= 0.5; a += 0.01) {
    const std::size_t e = exceedances(s, a);
    EXPECT_LE(e, prev);
    prev = e;
  }
  const auto r = empirical_ld_rate("desu", 1.0, {20, 40}, 500, 1);
  for (const auto& p : r.points) {
    EXPECT_EQ(p.exceedances, 0u);
    EXPECT_TRUE(p.flagged);
    EXPECT_TRUE(std::isnan(p.rate_hat));
  }
  EXPECT_DOUBLE_EQ(r.rate_theory, 2.0);
}

TEST(RateTest, PointFieldsAndSeeding) {
  const auto r = empirical_ld_rate("desu", 0.1, {20, 40}, 2000, 3);
  ASSERT_EQ(r.points.size(), 2u);
  for (const auto& p : r.points) {
    const auto s = simulate_null("desu", p.n, 2000, grid_seed(3, p.n));
    EXPECT_EQ(p.exceedances, exceedances(s, 0.1));
    EXPECT_DOUBLE_EQ(p.p_hat, p.exceedances / 2000.0);
    EXPECT_NEAR(p.rate_hat, -std::log(p.p_hat) / static_cast<double>(p.n), 1e-15);
  }
  EXPECT_NE(grid_seed(3, 20), grid_seed(3, 40));
}

}  // namespace
}  // namespace ueks
