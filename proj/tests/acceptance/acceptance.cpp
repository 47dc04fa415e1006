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

// Acceptance checks. Each criterion prints one PASS or FAIL line with the
// measured values; tolerances are fixed here. Usage: ueks_acceptance
// [--criterion N]. UEKS_LDRATE_REPS overrides the replication count of
// criterion 7.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ueks/distributions.hpp"
#include "ueks/efficiency.hpp"
#include "ueks/kernels.hpp"
#include "ueks/large_deviation.hpp"
#include "ueks/montecarlo.hpp"
#include "ueks/rng.hpp"
#include "ueks/statistics.hpp"

namespace {

using namespace ueks;

struct verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [x] " << what << ";";
    }
  }
  void note(const std::string& what) { detail << " " << what << ";"; }
};

std::string fmt(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

constexpr std::string_view kDegreeTwoTests[] = {"desu", "angus", "puri-rubin", "symmetry-h",
                                            "bh",   "polya", "max-kernel"};

// 1. Variance maxima.
void criterion_1(verdict& v) {
  const double s7 = std::sqrt(7.0);
  struct row {
    const char* id;
    bool has_t;
    double t, phi0_sq, tol;
  };
  const row rows[] = {
      {"desu", true, std::numbers::ln2, 1.0 / 16, 1e-8},
      {"angus", true, 1 - 1 / std::numbers::sqrt2, 1.0 / 16, 1e-8},
      {"puri-rubin", true, -std::log((s7 + 1) / 6), (10 + 7 * s7) / 648, 1e-8},
      {"symmetry-h", false, 0, 1.0 / 12, 1e-8},
      {"bh", true, 2.0 / 3, 1.0 / 27, 1e-8},
      {"max-kernel", false, 0, 27.0 / 256, 1e-8},
      {"polya", true, 0.0, 1.0 / 48, 1e-6},
  };
  for (const auto& r : rows) {
    const auto m = maximize_variance(builtin_family(r.id));
    v.note(std::string(r.id) + " t*=" + fmt(m.t_star) + " phi0^2=" + fmt(m.phi0_sq));
    v.check(std::abs(m.phi0_sq - r.phi0_sq) <= r.tol, std::string(r.id) + " phi0^2");
    if (r.has_t) v.check(std::abs(std::abs(m.t_star) - r.t) <= r.tol, std::string(r.id) + " t*");
  }
}

// 2. Leading rate coefficients.
void criterion_2(verdict& v) {
  const double s7 = std::sqrt(7.0);
  const std::pair<const char*, double> rows[] = {
      {"max-kernel", 32.0 / 27}, {"desu", 2.0},        {"angus", 2.0}, {"puri-rubin", (7 * s7 - 10) / 3},
      {"symmetry-h", 1.5},       {"bh", 27.0 / 8},     {"polya", 6.0}};
  for (const auto& [id, c] : rows) {
    const auto rf = ld_leading_coeff(builtin_family(id));
    v.note(std::string(id) + " c=" + fmt(rf.leading_coeff));
    v.check(std::abs(rf.leading_coeff - c) <= 1e-6, std::string(id) + " c");
    const double m = rf.degree;
    v.check(std::abs(rf.leading_coeff * 2 * m * m * rf.phi0_sq - 1) <= 1e-12,
            std::string(id) + " c*2m^2*phi0^2 = 1");
  }
}

// 3. Kolmogorov's f0.
void criterion_3(verdict& v) {
  const double ratio = kolmogorov_f0(0.01) / 2e-4;
  v.note("f0(0.01)/2e-4=" + fmt(ratio));
  v.check(ratio >= 0.99 && ratio <= 1.01, "small-a ratio");
  // Continuity: the two-sided difference must shrink with the step; a jump
  // would keep it fixed.
  double prev = 0, worst_ratio = 0;
  bool monotone = true;
  for (int k = 1; k <= 99; ++k) {
    const double a = k / 100.0;
    const double f = kolmogorov_f0(a);
    monotone = monotone && f > prev;
    prev = f;
    const double wide = kolmogorov_f0(a + 1e-5) - kolmogorov_f0(a - 1e-5);
    const double narrow = kolmogorov_f0(a + 1e-6) - kolmogorov_f0(a - 1e-6);
    worst_ratio = std::max(worst_ratio, std::abs(narrow) / std::abs(wide));
  }
  v.note("max diff(1e-6)/diff(1e-5)=" + fmt(worst_ratio, 4));
  v.check(monotone, "monotone on 99-point grid");
  v.check(worst_ratio <= 0.2, "continuity at grid points");
  for (double a : {0.1, 0.3, 0.5, 0.7}) {
    double grid = INFINITY;
    for (int i = 1; i < 1000000; ++i) grid = std::min(grid, kolmogorov_f(a, i * 1e-6));
    const double f0 = kolmogorov_f0(a);
    v.note("a=" + fmt(a, 2) + " f0=" + fmt(f0) + " grid=" + fmt(grid));
    v.check(std::abs(f0 - grid) <= 1e-8, "grid oracle at a=" + fmt(a, 2));
  }
}

// 4. Local Bahadur efficiencies.
void criterion_4(verdict& v) {
  const auto w = local_efficiency("desu", alternative_family::builtin("weibull"));
  v.note("desu/weibull eff=" + fmt(w.efficiency) + " slope=" + fmt(w.slope_coeff) +
         " kl=" + fmt(w.kl_coeff));
  v.check(std::abs(w.efficiency - 0.1581) <= 0.003, "desu/weibull efficiency");
  v.check(std::abs(w.slope_coeff - 0.2601) <= 0.002, "desu/weibull slope_coeff");
  v.check(std::abs(w.kl_coeff - 1.6449) <= 0.005, "desu/weibull kl_coeff");
  const auto m = local_efficiency("desu", alternative_family::builtin("makeham"));
  v.note("desu/makeham eff=" + fmt(m.efficiency));
  v.check(std::abs(m.efficiency - 0.4938) <= 0.01, "desu/makeham efficiency 0.4938");
  const auto& ns = alternative_family::builtin("normshift");
  const double h = local_efficiency("symmetry-h", ns).efficiency;
  const double b = local_efficiency("bh", ns).efficiency;
  v.note("symmetry-h/normshift eff=" + fmt(h) + " bh/normshift eff=" + fmt(b));
  v.check(std::abs(h - 0.955) <= 0.02, "symmetry-h/normshift efficiency");
  v.check(std::abs(b - 0.75) <= 0.02, "bh/normshift efficiency");
}

// 5. Exact suprema vs dense grids; side identities; tail sandwich.
void criterion_5(verdict& v) {
  std::size_t checked = 0, unresolved = 0;
  for (auto id : kDegreeTwoTests) {
    const auto& null = builtin_family(id).null();
    statistic_evaluator ev(id);
    bool ok = true, sides_ok = true;
    for (std::uint64_t k = 0; k < 100; ++k) {
      const counter_stream pick(2024, k);
      const std::size_t n = 2 + static_cast<std::size_t>(pick.uniform(0) * 29);  // 2..30
      const sample s = draw_sample(null, n, 1000 + k);
      const side_values sv = ev.evaluate(s.values());
      const auto r = testing::dense_statistic(id, s.values(), 1000000, null);
      for (auto [exact, grid] : {std::pair{sv.plus.value, r.grid.plus},
                                 std::pair{sv.minus.value, r.grid.minus}}) {
        ++checked;
        if (!testing::within_resolution(exact, grid, r)) ok = false;
        if (std::abs(exact - grid) > 1e-12 && r.slope == 0) ++unresolved;
      }
      const double two = compute_statistic(id, s, side::two_sided).value;
      if (two != std::max(sv.plus.value, sv.minus.value)) sides_ok = false;
    }
    v.check(ok, std::string(id) + " grid oracle");
    v.check(sides_ok, std::string(id) + " two-sided = max(one-sided)");
  }
  v.note(std::to_string(checked) + " one-sided values vs 1e6-point grids, " +
         std::to_string(unresolved) + " differ where breakpoints are closer than the grid step");
  std::size_t batches = 0;
  bool sandwich = true;
  for (auto id : kDegreeTwoTests) {
    for (std::size_t n : {10, 25}) {
      const auto b = simulate_sides(id, n, 2000, 77 + n);
      for (double a = 0.02; a < 0.6; a += 0.02) {
        std::size_t p = 0, m = 0, t = 0;
        for (std::size_t r = 0; r < b.two_sided.size(); ++r) {
          p += b.plus[r] > a;
          m += b.minus[r] > a;
          t += b.two_sided[r] > a;
        }
        sandwich = sandwich && std::max(p, m) <= t && t <= p + m && p + m <= 2 * std::max(p, m);
        ++batches;
      }
    }
  }
  v.note(std::to_string(batches) + " sandwich batches");
  v.check(sandwich, "max(P+,P-) <= P <= P+ + P- <= 2max(P+,P-)");
}

// 6. Centredness and projection variance by Monte Carlo. On infinite
// parameter ranges the t grid sits at null quantiles 0.025..0.975, so every
// event the kernel tests has probability well above 1/N.
void criterion_6(verdict& v) {
  constexpr std::size_t kDraws = 100000;
  std::size_t checks = 0;
  double worst_centre = 0, worst_var = 0;
  for (auto id : builtin_ids()) {
    const auto& fam = builtin_family(id);
    const int m = fam.degree();
    const auto g = fam.grid_interval();
    const auto xs = draw(fam.null(), kDraws * static_cast<std::size_t>(m), 606, 0);
    const auto ys = draw(fam.null(), kDraws, 606, 1);
    for (int i = 0; i < 20; ++i) {
      const double w = (i + 0.5) / 20.0;
      const bool infinite = std::isinf(fam.interval().lo) || std::isinf(fam.interval().hi);
      const double t = infinite ? fam.null().quantile(w) : g.lo + (g.hi - g.lo) * w;
      double s1 = 0, s2 = 0, p1 = 0, p2 = 0;
      for (std::size_t r = 0; r < kDraws; ++r) {
        const double k = eval_kernel(fam, std::span(xs).subspan(r * m, m), t);
        s1 += k;
        s2 += k * k;
        const double p = projection(fam, ys[r], t);
        p1 += p * p;
        p2 += p * p * p * p;
      }
      const double N = kDraws;
      const double mean = s1 / N, se = std::sqrt(std::max(0.0, s2 / N - mean * mean) / N);
      const double vhat = p1 / N, vse = std::sqrt(std::max(0.0, p2 / N - vhat * vhat) / N);
      const double var = variance_at(fam, t);
      const double zc = se > 0 ? std::abs(mean) / se : (mean == 0 ? 0 : INFINITY);
      const double zv = vse > 0 ? std::abs(vhat - var) / vse : (std::abs(vhat - var) < 1e-12 ? 0 : INFINITY);
      worst_centre = std::max(worst_centre, zc);
      worst_var = std::max(worst_var, zv);
      v.check(zc <= 3, std::string(id) + " centred at t=" + fmt(t, 4) + " (z=" + fmt(zc, 3) + ")");
      v.check(zv <= 3, std::string(id) + " variance at t=" + fmt(t, 4) + " (z=" + fmt(zv, 3) + ")");
      checks += 2;
    }
  }
  v.note(std::to_string(checks) + " checks, worst |z| centredness " + fmt(worst_centre, 3) +
         ", variance " + fmt(worst_var, 3));
}

std::size_t env_reps(std::size_t fallback) {
  if (const char* e = std::getenv("UEKS_LDRATE_REPS")) return std::strtoull(e, nullptr, 10);
  return fallback;
}

// 7. Empirical large-deviation rates.
void criterion_7(verdict& v) {
  const std::size_t reps = env_reps(200000);
  v.note("reps=" + std::to_string(reps));
  simulation_options opt;
  // The default budget is a guard for interactive use; an explicit override
  // of the replication count is a deliberate long run.
  if (std::getenv("UEKS_LDRATE_REPS")) opt.kernel_budget = UINT64_MAX;
  const auto d = empirical_ld_rate("desu", 0.25, {40, 80, 160}, reps, 7, opt);
  std::vector<double> rates;
  for (const auto& p : d.points) {
    v.note("desu n=" + std::to_string(p.n) + " exceed=" + std::to_string(p.exceedances) +
           " rate=" + fmt(p.rate_hat, 4));
    rates.push_back(p.rate_hat);
  }
  const bool finite = std::all_of(rates.begin(), rates.end(), [](double r) { return std::isfinite(r); });
  v.check(finite, "desu: every grid point has exceedances");
  v.check(finite && rates[0] < rates[1] && rates[1] < rates[2], "desu: rate increasing in n");
  const double target = d.rate_theory;
  v.check(std::isfinite(rates[2]) && rates[2] >= target / 1.5 && rates[2] <= target * 1.5,
          "desu n=160 within 1.5x of 2a^2=" + fmt(target, 4));
  const auto k = empirical_ld_rate("kolmogorov", 0.2, {50, 100, 200}, reps, 7, opt);
  const double f0 = kolmogorov_f0(0.2);
  for (const auto& p : k.points) {
    v.note("kolmogorov n=" + std::to_string(p.n) + " exceed=" + std::to_string(p.exceedances) +
           " rate=" + fmt(p.rate_hat, 4));
  }
  const double r200 = k.points.back().rate_hat;
  v.check(std::isfinite(r200) && r200 >= f0 / 1.3 && r200 <= f0 * 1.3,
          "kolmogorov n=200 within 1.3x of f0(0.2)=" + fmt(f0, 4));
}

// 8. Distribution-freeness.
void criterion_8(verdict& v) {
  simulation_options a, b;
  a.null = distribution::exponential(1);
  b.null = distribution::exponential(5);
  const auto x = simulate_sides("desu", 100, 10000, 8, a);
  const auto y = simulate_sides("desu", 100, 10000, 8, b);
  v.check(x.two_sided == y.two_sided && x.plus == y.plus && x.minus == y.minus,
          "desu exp(1) vs exp(5)");
  simulation_options c, d;
  c.null = distribution::normal(0, 1);
  d.null = distribution::normal(0, 3.5);
  const auto p = simulate_sides("polya", 50, 2000, 8, c);
  const auto q = simulate_sides("polya", 50, 2000, 8, d);
  v.check(p.two_sided == q.two_sided && p.plus == q.plus && p.minus == q.minus,
          "polya N(0,1) vs N(0,3.5^2)");
  v.note("desu 10000 reps at n=100, polya 2000 reps at n=50");
}

// 9. Exponential bounds against exact or simulated tails.
double binomial_upper_tail(long n, double p, double x) {
  // P(Bin(n, p) > x) by direct summation in log space.
  double s = 0;
  for (long k = static_cast<long>(std::floor(x)) + 1; k <= n; ++k) {
    if (k < 0) continue;
    const double lp = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                      k * std::log(p) + (n - k) * std::log1p(-p);
    s += std::exp(lp);
  }
  return s;
}

void criterion_9(verdict& v) {
  const counter_stream rng(99, 0);
  std::uint64_t idx = 0;
  auto u = [&] { return rng.uniform(idx++); };
  int tight = 0;
  for (int i = 0; i < 50; ++i) {
    const long n = 5 + static_cast<long>(u() * 96);
    const long N = 2 + static_cast<long>(u() * 999);
    const double tau = 0.01 + 0.98 * u();
    const double exact = binomial_upper_tail(n, 1.0 / N, n * tau);
    const double bound = binomial_tail_bound(n, N, tau);
    tight += bound < 1;
    v.check(bound >= exact, "binomial n=" + std::to_string(n) + " N=" + std::to_string(N) +
                                " tau=" + fmt(tau, 4));
  }
  v.note("binomial: 50 instances, " + std::to_string(tight) + " with bound < 1");
  std::vector<std::string_view> ids;
  for (auto id : builtin_ids())
    if (builtin_family(id).degree() == 2) ids.push_back(id);
  int tight_a = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& fam = builtin_family(ids[static_cast<std::size_t>(u() * ids.size())]);
    const auto g = fam.grid_interval();
    const double t = g.lo + (g.hi - g.lo) * (0.1 + 0.8 * u());
    const long n = 10 + static_cast<long>(u() * 41);
    const double z = 0.02 + 0.3 * u();
    const double s2 = variance_at(fam, t);
    const int reps = 1000;
    int hits = 0;
    for (int r = 0; r < reps; ++r) {
      const auto x = draw(fam.null(), static_cast<std::size_t>(n), 900 + i, r);
      double sum = 0;
      for (long a = 0; a < n; ++a)
        for (long b = a + 1; b < n; ++b) {
          const double args[2] = {x[a], x[b]};
          sum += eval_kernel(fam, args, t);
        }
      hits += std::abs(sum / (n * (n - 1) / 2.0)) >= z;
    }
    const double bound = arcones_bound(n, z, 2, s2, fam.bound());
    tight_a += bound < 1;
    v.check(bound >= static_cast<double>(hits) / reps,
            fam.id() + " t=" + fmt(t, 4) + " n=" + std::to_string(n) + " z=" + fmt(z, 3));
  }
  v.note("arcones: 50 instances, 1000 reps each, " + std::to_string(tight_a) + " with bound < 1");
}

// 10. Byte-identical CLI output across runs and thread counts.
#ifdef UEKS_CLI_PATH
std::string capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  const int status = pclose(p);
  if (status != 0) out += "\n<exit " + std::to_string(status) + ">";
  return out;
}

void criterion_10(verdict& v) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ueks_acceptance_10";
  fs::create_directories(dir);
  const fs::path data = dir / "x.txt";
  {
    std::ofstream out(data);
    out.precision(17);
    for (double x : draw(distribution::exponential(1), 150, 10)) out << x << "\n";
  }
  const std::vector<std::string> commands = {
      "test --data " + data.string() + " --test desu --reps 2000 --seed 1",
      "test --data " + data.string() + " --test puri-rubin --reps 1000 --seed 2 --side plus",
      "critvals --test bh --n 100 --reps 10000 --seed 1 --alpha 0.05 --alpha 0.01",
      "critvals --test kolmogorov --n 200 --reps 5000 --seed 3",
      "ldrate --test desu --a 0.2 --n-grid 20,40 --reps 5000 --seed 4",
      "varfun --test polya --lo -3 --hi 3 --points 601",
      "efficiency --test desu --alt weibull",
      "f0 --grid 20",
  };
  int compared = 0;
  for (const auto& c : commands) {
    for (const char* format : {"json", "csv"}) {
      const std::string args = std::string(" --format ") + format + " " + c + " 2>&1";
      const std::string first = capture(std::string("UEKS_THREADS=1 ") + UEKS_CLI_PATH + args);
      const std::string again = capture(std::string("UEKS_THREADS=1 ") + UEKS_CLI_PATH + args);
      const std::string many = capture(std::string("UEKS_THREADS=4 ") + UEKS_CLI_PATH + args);
      const bool ok = !first.empty() && first.find("<exit") == std::string::npos &&
                      first == again && first == many;
      v.check(ok, c + " (" + format + ")");
      ++compared;
    }
  }
  fs::remove_all(dir);
  v.note(std::to_string(compared) + " invocations compared at 1 and 4 threads");
}
#else
void criterion_10(verdict& v) { v.check(false, "built without the CLI"); }
#endif

const std::function<void(verdict&)> kCriteria[] = {
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
};

bool run_criterion(int k) {
  verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    kCriteria[k - 1](v);
  } catch (const std::exception& e) {
    v.check(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s criterion %d (%.1fs):%s\n", v.pass ? "PASS" : "FAIL", k, secs,
              v.detail.str().c_str());
  std::fflush(stdout);
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (which.empty())
    for (int k = 1; k <= 10; ++k) which.push_back(k);
  bool all = true;
  for (int k : which) {
    if (k < 1 || k > 10) {
      std::fprintf(stderr, "no criterion %d\n", k);
      return 2;
    }
    all = run_criterion(k) && all;
  }
  return all ? 0 : 1;
}
