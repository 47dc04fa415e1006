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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "ueks/errors.hpp"
#include "ueks/kernels.hpp"
#include "ueks/large_deviation.hpp"
#include "ueks/rng.hpp"

namespace ueks {
namespace {

void check_budget(const kernel_family& fam, std::size_t n, std::size_t reps,
                  std::uint64_t budget) {
  const std::uint64_t per = binomial(n, static_cast<std::uint64_t>(fam.degree()));
  if (per != 0 && reps > budget / per) {
    std::ostringstream msg;
    msg << "simulation needs " << reps << " x " << per << " kernel evaluations, budget is "
        << budget;
    throw size_error(msg.str());
  }
}

// Runs body(evaluator, replication, sorted sample) over all replications.
// Worker w takes replications w, w + T, ...; results are written by index so
// the output does not depend on T.
template <class Body>
void run_replications(std::string_view test_id, std::size_t n, std::size_t reps,
                      std::uint64_t seed, const simulation_options& options, Body body) {
  const kernel_family& fam = builtin_family(test_id);
  if (n < static_cast<std::size_t>(std::max(fam.degree(), 2))) {
    throw domain_error("simulation: n is too small for " + std::string(test_id));
  }
  if (reps < 100) throw parameter_error("simulation: reps must be >= 100");
  check_budget(fam, n, reps, options.kernel_budget);
  const distribution null = options.null.value_or(fam.null());
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(options.threads), reps));

  auto worker = [&](unsigned w) {
    statistic_options so;
    so.reference = fam.null();
    so.center = options.center;
    so.udf_cap = std::numeric_limits<std::uint64_t>::max();
    statistic_evaluator ev(test_id, so);
    std::vector<double> buf(n);
    for (std::size_t r = w; r < reps; r += threads) {
      const counter_stream rng(seed, r);
      rng.fill_uniform(0, buf.data(), n);
      for (double& v : buf) v = null.quantile(v);
      std::sort(buf.begin(), buf.end());
      body(ev, r, std::span<const double>(buf));
    }
  };
  if (threads <= 1) {
    worker(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  for (auto& t : pool) t.join();
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("UEKS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

null_simulation simulate_null(std::string_view test_id, std::size_t n, std::size_t reps,
                              std::uint64_t seed, const simulation_options& options) {
  null_simulation sim;
  sim.test_id = test_id;
  sim.n = n;
  sim.reps = reps;
  sim.seed = seed;
  sim.which = options.which;
  sim.null = options.null.value_or(builtin_family(test_id).null());
  sim.values.resize(reps);
  run_replications(test_id, n, reps, seed, options,
                   [&](statistic_evaluator& ev, std::size_t r, std::span<const double> x) {
                     sim.values[r] = ev.evaluate(x).get(options.which).value;
                   });
  std::sort(sim.values.begin(), sim.values.end());
  return sim;
}

side_batch simulate_sides(std::string_view test_id, std::size_t n, std::size_t reps,
                          std::uint64_t seed, const simulation_options& options) {
  side_batch out;
  out.plus.resize(reps);
  out.minus.resize(reps);
  out.two_sided.resize(reps);
  run_replications(test_id, n, reps, seed, options,
                   [&](statistic_evaluator& ev, std::size_t r, std::span<const double> x) {
                     const side_values v = ev.evaluate(x);
                     out.plus[r] = v.plus.value;
                     out.minus[r] = v.minus.value;
                     out.two_sided[r] = v.two_sided().value;
                   });
  return out;
}

double critical_value(const null_simulation& sim, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("critical_value: alpha must lie in (0, 1)");
  const double reps = static_cast<double>(sim.values.size());
  if (reps * alpha < 10.0 - 1e-9) {
    std::ostringstream msg;
    msg << "critical_value: reps * alpha = " << reps * alpha << " < 10";
    throw precision_error(msg.str());
  }
  // ceil((1 - alpha) reps), guarded against representation error in alpha.
  const auto above = static_cast<std::size_t>(std::floor(alpha * reps + 1e-9));
  const std::size_t rank = sim.values.size() - above;
  return sim.values[std::max<std::size_t>(rank, 1) - 1];
}

double p_value(const null_simulation& sim, double observed) {
  if (sim.values.empty()) throw parameter_error("p_value: empty simulation");
  const auto ge = static_cast<double>(
      sim.values.end() - std::lower_bound(sim.values.begin(), sim.values.end(), observed));
  return (1.0 + ge) / (static_cast<double>(sim.values.size()) + 1.0);
}

std::size_t exceedances(const null_simulation& sim, double a) {
  return static_cast<std::size_t>(
      sim.values.end() - std::upper_bound(sim.values.begin(), sim.values.end(), a));
}

std::uint64_t grid_seed(std::uint64_t seed, std::size_t n) noexcept {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(n)));
}

rate_estimate empirical_ld_rate(std::string_view test_id, double a,
                                const std::vector<std::size_t>& n_grid, std::size_t reps,
                                std::uint64_t seed, const simulation_options& options) {
  if (!(a > 0.0)) throw parameter_error("empirical_ld_rate: a must be positive");
  if (n_grid.empty()) throw parameter_error("empirical_ld_rate: empty n grid");
  rate_estimate est;
  est.test_id = test_id;
  est.a = a;
  est.reps = reps;
  est.seed = seed;
  est.rate_theory = ld_leading_coeff(builtin_family(test_id)).leading_coeff * a * a;
  for (std::size_t n : n_grid) {
    const null_simulation sim = simulate_null(test_id, n, reps, grid_seed(seed, n), options);
    rate_point p;
    p.n = n;
    p.exceedances = exceedances(sim, a);
    p.p_hat = static_cast<double>(p.exceedances) / static_cast<double>(reps);
    if (p.exceedances == 0) {
      p.rate_hat = std::numeric_limits<double>::quiet_NaN();
      p.flagged = true;
    } else {
      p.rate_hat = -std::log(p.p_hat) / static_cast<double>(n);
    }
    est.points.push_back(p);
  }
  return est;
}

}  // namespace ueks
