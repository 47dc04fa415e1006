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

#include "ueks/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "ueks/errors.hpp"
#include "ueks/kernels.hpp"

namespace ueks {
namespace {

enum class test_kind { desu, angus, puri_rubin, symmetry_h, bh, polya, max_kernel, kolmogorov };

test_kind lookup_test(std::string_view id) {
  if (id == "desu") return test_kind::desu;
  if (id == "angus") return test_kind::angus;
  if (id == "puri-rubin") return test_kind::puri_rubin;
  if (id == "symmetry-h") return test_kind::symmetry_h;
  if (id == "bh") return test_kind::bh;
  if (id == "polya") return test_kind::polya;
  if (id == "max-kernel") return test_kind::max_kernel;
  if (id == "kolmogorov") return test_kind::kolmogorov;
  throw registry_error("unknown test id '" + std::string(id) + "'");
}

// Integer-numerator running maxima of (cA/NA - cB/NB) = num / (NA*NB).
struct numerator_max {
  std::int64_t plus = 0;
  std::int64_t minus = 0;
  double plus_at = 0.0;
  double minus_at = 0.0;
  attainment plus_how = attainment::at_point;
  attainment minus_how = attainment::at_point;
  bool seen = false;

  void offer(std::int64_t num, double t, attainment how) {
    if (!seen) {
      plus_at = minus_at = t;
      seen = true;
    }
    if (num > plus) {
      plus = num;
      plus_at = t;
      plus_how = how;
    }
    if (-num > minus) {
      minus = -num;
      minus_at = t;
      minus_how = how;
    }
  }

  side_values finish(double denom) const {
    return {{static_cast<double>(plus) / denom, plus_at, plus_how},
            {static_cast<double>(minus) / denom, minus_at, minus_how}};
  }
};

// Walks the merged jump locations of two step functions. locA(i)/cumA(i)
// give the i-th jump location and the mass at or below it.
template <class LocA, class CumA, class LocB, class CumB>
side_values merge_sup(std::size_t na, LocA loc_a, CumA cum_a, std::uint64_t tot_a,
                      std::size_t nb, LocB loc_b, CumB cum_b, std::uint64_t tot_b) {
  numerator_max acc;
  if (na + nb == 0) return acc.finish(1.0);
  const double first = na == 0 ? loc_b(0) : nb == 0 ? loc_a(0) : std::min(loc_a(0), loc_b(0));
  // Left of every jump both functions vanish.
  acc.offer(0, first, attainment::at_point);
  std::size_t i = 0, j = 0;
  std::uint64_t ca = 0, cb = 0;
  const auto ta = static_cast<std::int64_t>(tot_a), tb = static_cast<std::int64_t>(tot_b);
  while (i < na || j < nb) {
    double x;
    if (j >= nb || (i < na && loc_a(i) <= loc_b(j))) {
      x = loc_a(i);
    } else {
      x = loc_b(j);
    }
    while (i < na && loc_a(i) == x) ca = cum_a(i++);
    while (j < nb && loc_b(j) == x) cb = cum_b(j++);
    const std::int64_t num = static_cast<std::int64_t>(ca) * tb - static_cast<std::int64_t>(cb) * ta;
    acc.offer(num, x, attainment::right_limit);
  }
  return acc.finish(static_cast<double>(tot_a) * static_cast<double>(tot_b));
}

// Sorts values and collapses equal ones into (location, cumulative count).
void compress_sorted(std::span<const double> sorted, std::vector<double>& locs,
                     std::vector<std::uint64_t>& cums) {
  locs.clear();
  cums.clear();
  std::uint64_t c = 0;
  for (double v : sorted) {
    ++c;
    if (!locs.empty() && locs.back() == v) {
      cums.back() = c;
    } else {
      locs.push_back(v);
      cums.push_back(c);
    }
  }
}

void compress_weighted(std::vector<std::pair<double, std::uint64_t>>& pts,
                       std::vector<double>& locs, std::vector<std::uint64_t>& cums) {
  std::sort(pts.begin(), pts.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  locs.clear();
  cums.clear();
  std::uint64_t c = 0;
  for (const auto& [v, w] : pts) {
    c += w;
    if (!locs.empty() && locs.back() == v) {
      cums.back() = c;
    } else {
      locs.push_back(v);
      cums.push_back(c);
    }
  }
}

void check_cap(std::uint64_t count, std::uint64_t cap) {
  if (count > cap) {
    std::ostringstream msg;
    msg << "U-empirical df needs " << count << " kernel evaluations, cap is " << cap;
    throw size_error(msg.str());
  }
}

inline std::size_t count_lt(std::span<const double> x, double v) {
  return static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), v) - x.begin());
}
inline std::size_t count_le(std::span<const double> x, double v) {
  return static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), v) - x.begin());
}

}  // namespace

side parse_side(std::string_view name) {
  if (name == "plus") return side::plus;
  if (name == "minus") return side::minus;
  if (name == "two-sided" || name == "two_sided" || name == "both") return side::two_sided;
  throw parse_error("unknown side '" + std::string(name) + "'");
}

std::string_view to_string(side s) {
  switch (s) {
    case side::plus:
      return "plus";
    case side::minus:
      return "minus";
    case side::two_sided:
      return "two-sided";
  }
  return "";
}

step_function step_function::from_points(std::vector<double> points, std::uint64_t total) {
  std::sort(points.begin(), points.end());
  step_function f;
  f.total_ = total;
  compress_sorted(points, f.locations_, f.cumulative_);
  return f;
}

step_function step_function::from_weighted(std::vector<std::pair<double, std::uint64_t>> points,
                                           std::uint64_t total) {
  step_function f;
  f.total_ = total;
  compress_weighted(points, f.locations_, f.cumulative_);
  return f;
}

double step_function::operator()(double t) const noexcept {
  const auto k = std::lower_bound(locations_.begin(), locations_.end(), t) - locations_.begin();
  return k == 0 ? 0.0
                : static_cast<double>(cumulative_[static_cast<std::size_t>(k - 1)]) /
                      static_cast<double>(total_);
}

double step_function::right_limit(double t) const noexcept {
  const auto k = std::upper_bound(locations_.begin(), locations_.end(), t) - locations_.begin();
  return k == 0 ? 0.0
                : static_cast<double>(cumulative_[static_cast<std::size_t>(k - 1)]) /
                      static_cast<double>(total_);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t m) {
  if (m > n) return 0;
  m = std::min(m, n - m);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= m; ++i) {
    // r * (n - m + i) is divisible by i; split via gcd to delay overflow.
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t a = r / g, b = (n - m + i) / (i / g);
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) {
      throw size_error("binomial coefficient overflows 64 bits");
    }
    r = a * b;
  }
  return r;
}

step_function build_edf(const sample& s) {
  std::vector<double> v(s.values().begin(), s.values().end());
  return step_function::from_points(std::move(v), s.size());
}

step_function build_udf(const sample& s, const kernel_fn& h, int m, std::uint64_t cap) {
  if (m < 1) throw domain_error("build_udf: degree must be >= 1");
  const std::size_t n = s.size();
  if (n < static_cast<std::size_t>(m)) throw domain_error("build_udf: need n >= m");
  const std::uint64_t count = binomial(n, static_cast<std::uint64_t>(m));
  check_cap(count, cap);

  std::vector<double> hv;
  hv.reserve(count);
  std::vector<std::size_t> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<double> args(static_cast<std::size_t>(m));
  const auto x = s.values();
  while (true) {
    for (std::size_t k = 0; k < idx.size(); ++k) args[k] = x[idx[k]];
    hv.push_back(h(args));
    // Next combination in lexicographic order.
    std::size_t k = idx.size();
    while (k > 0 && idx[k - 1] == n - idx.size() + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t r = k; r < idx.size(); ++r) idx[r] = idx[r - 1] + 1;
  }
  return step_function::from_points(std::move(hv), count);
}

sup_result sup_diff(const step_function& a, const step_function& b, side s) {
  const auto la = a.locations(), lb = b.locations();
  const auto ca = a.cumulative(), cb = b.cumulative();
  const side_values v = merge_sup(
      la.size(), [&](std::size_t i) { return la[i]; }, [&](std::size_t i) { return ca[i]; },
      a.total(), lb.size(), [&](std::size_t i) { return lb[i]; },
      [&](std::size_t i) { return cb[i]; }, b.total());
  return v.get(s);
}

sup_result sup_against(const step_function& a, const scalar_fn& g, side s) {
  const auto loc = a.locations();
  const auto cum = a.cumulative();
  const double total = static_cast<double>(a.total());
  // A - G approaches its sup just right of a jump; G - A attains it at the
  // jump itself (left-continuous A).
  sup_result plus{0.0, loc.empty() ? 0.0 : loc.front(), attainment::left_limit};
  sup_result minus{0.0, loc.empty() ? 0.0 : loc.back(), attainment::right_limit};
  std::uint64_t below = 0;
  for (std::size_t k = 0; k < loc.size(); ++k) {
    const double gk = g(loc[k]);
    const double left = gk - static_cast<double>(below) / total;
    if (left > minus.value) minus = {left, loc[k], attainment::at_point};
    below = cum[k];
    const double right = static_cast<double>(below) / total - gk;
    if (right > plus.value) plus = {right, loc[k], attainment::right_limit};
  }
  side_values v{plus, minus};
  return v.get(s);
}

statistic_evaluator::statistic_evaluator(std::string_view test_id, statistic_options options)
    : test_id_(test_id),
      options_(std::move(options)),
      reference_(options_.reference.value_or(builtin_family(test_id).null())) {
  lookup_test(test_id_);
}

side_values statistic_evaluator::evaluate(std::span<const double> x) {
  const test_kind kind = lookup_test(test_id_);
  if (x.empty()) throw domain_error("statistic: empty sample");
  if (kind != test_kind::kolmogorov && x.size() < 2) {
    throw domain_error("statistic: " + test_id_ + " needs n >= 2");
  }
  switch (kind) {
    case test_kind::desu:
      return desu(x);
    case test_kind::puri_rubin:
      return pairwise(x, true);
    case test_kind::polya:
      if (options_.center) {
        const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
        centered_.assign(x.begin(), x.end());
        for (double& v : centered_) v -= mean;
        return pairwise(centered_, false);
      }
      return pairwise(x, false);
    case test_kind::angus:
      return angus(x);
    case test_kind::symmetry_h:
      return symmetry_h(x);
    case test_kind::bh:
      return bh(x);
    case test_kind::max_kernel:
      return max_kernel(x);
    case test_kind::kolmogorov:
      return kolmogorov(x);
  }
  return {};
}

// U-df of 2 min(x, y): for sorted data the pair minima are x_j with
// multiplicity n - 1 - j, so no pair enumeration is needed.
side_values statistic_evaluator::desu(std::span<const double> x) {
  const std::size_t n = x.size();
  check_cap(binomial(n, 2), options_.udf_cap);
  cums_.resize(n);
  std::uint64_t c = 0;
  for (std::size_t j = 0; j < n; ++j) {
    c += n - 1 - j;
    cums_[j] = c;
  }
  return merge_sup(
      n, [&](std::size_t i) { return 2.0 * x[i]; }, [&](std::size_t i) { return cums_[i]; },
      binomial(n, 2), n, [&](std::size_t i) { return x[i]; },
      [](std::size_t i) { return static_cast<std::uint64_t>(i + 1); }, n);
}

side_values statistic_evaluator::pairwise(std::span<const double> x, bool absolute_difference) {
  const std::size_t n = x.size();
  const std::uint64_t pairs = binomial(n, 2);
  check_cap(pairs, options_.udf_cap);
  hvals_.resize(pairs);
  std::size_t k = 0;
  if (absolute_difference) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) hvals_[k++] = std::abs(x[i] - x[j]);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        hvals_[k++] = (x[i] + x[j]) / std::numbers::sqrt2;
  }
  std::sort(hvals_.begin(), hvals_.end());
  compress_sorted(hvals_, locs_, cums_);
  return merge_sup(
      locs_.size(), [&](std::size_t i) { return locs_[i]; },
      [&](std::size_t i) { return cums_[i]; }, pairs, n, [&](std::size_t i) { return x[i]; },
      [](std::size_t i) { return static_cast<std::uint64_t>(i + 1); }, n);
}

// sup over x >= 0 of Fbar_n(2x) - Fbar_n(x)^2 with Fbar_n(x) = #{X_i >= x}/n.
// The function is constant between the breakpoints {0, X_i, X_i/2}; each
// breakpoint contributes its value and its right limit.
side_values statistic_evaluator::angus(std::span<const double> x) {
  const std::size_t n = x.size();
  const auto nn = static_cast<std::int64_t>(n);
  locs_.clear();
  locs_.push_back(0.0);
  for (double v : x) {
    if (v >= 0) {
      locs_.push_back(v);
      locs_.push_back(0.5 * v);
    }
  }
  std::sort(locs_.begin(), locs_.end());
  locs_.erase(std::unique(locs_.begin(), locs_.end()), locs_.end());
  numerator_max acc;
  for (double b : locs_) {
    const auto ge2 = static_cast<std::int64_t>(n - count_lt(x, 2 * b));
    const auto ge1 = static_cast<std::int64_t>(n - count_lt(x, b));
    acc.offer(ge2 * nn - ge1 * ge1, b, attainment::at_point);
    const auto gt2 = static_cast<std::int64_t>(n - count_le(x, 2 * b));
    const auto gt1 = static_cast<std::int64_t>(n - count_le(x, b));
    acc.offer(gt2 * nn - gt1 * gt1, b, attainment::right_limit);
  }
  return acc.finish(static_cast<double>(nn) * static_cast<double>(nn));
}

// sup_t [DeltaF_n(t) - (1/n) sum_j DeltaF_n(X_j)], DeltaF_n(t) = F_n(t) + F_n(-t) - 1,
// carried as integer numerators over n^2.
side_values statistic_evaluator::symmetry_h(std::span<const double> x) {
  const std::size_t n = x.size();
  const auto nn = static_cast<std::int64_t>(n);
  std::int64_t centre = 0;
  for (std::size_t j = 0; j < n; ++j) {
    centre += static_cast<std::int64_t>(j + count_lt(x, -x[j]));
  }
  numerator_max acc;
  // t -> -inf and t -> +inf both give F_n(t) + F_n(-t) = 1.
  acc.offer(nn * nn - centre, x.front() < -x.back() ? x.front() : -x.back(),
            attainment::left_limit);
  for (std::size_t j = 0; j < n; ++j) {
    for (double b : {x[j], -x[j]}) {
      const auto lt_b = static_cast<std::int64_t>(count_lt(x, b));
      const auto le_b = static_cast<std::int64_t>(count_le(x, b));
      const auto lt_nb = static_cast<std::int64_t>(count_lt(x, -b));
      const auto le_nb = static_cast<std::int64_t>(count_le(x, -b));
      acc.offer(nn * (lt_b + lt_nb) - centre, b, attainment::at_point);
      acc.offer(nn * (lt_b + le_nb) - centre, b, attainment::left_limit);
      acc.offer(nn * (le_b + lt_nb) - centre, b, attainment::right_limit);
    }
  }
  return acc.finish(static_cast<double>(nn) * static_cast<double>(nn));
}

// L_n (edf of |X|) against the U-df of |max(X_j, X_k)|; for sorted data the
// pair maxima are x_k with multiplicity k.
side_values statistic_evaluator::bh(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::uint64_t pairs = binomial(n, 2);
  check_cap(pairs, options_.udf_cap);
  abs_sorted_.resize(n);
  for (std::size_t i = 0; i < n; ++i) abs_sorted_[i] = std::abs(x[i]);
  std::sort(abs_sorted_.begin(), abs_sorted_.end());
  std::vector<double> abs_locs;
  compress_sorted(abs_sorted_, abs_locs, abs_cums_);
  weighted_.clear();
  for (std::size_t k = 1; k < n; ++k) weighted_.emplace_back(std::abs(x[k]), k);
  compress_weighted(weighted_, locs_, cums_);
  return merge_sup(
      abs_locs.size(), [&](std::size_t i) { return abs_locs[i]; },
      [&](std::size_t i) { return abs_cums_[i]; }, n, locs_.size(),
      [&](std::size_t i) { return locs_[i]; }, [&](std::size_t i) { return cums_[i]; }, pairs);
}

side_values statistic_evaluator::max_kernel(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::uint64_t pairs = binomial(n, 2);
  check_cap(pairs, options_.udf_cap);
  const auto& ref = reference_;
  locs_.assign(x.begin() + 1, x.end());
  cums_.resize(n - 1);
  std::uint64_t c = 0;
  for (std::size_t k = 1; k < n; ++k) {
    c += k;
    cums_[k - 1] = c;
  }
  const double total = static_cast<double>(pairs);
  side_values v;
  v.plus = {0.0, locs_.front(), attainment::left_limit};
  v.minus = {0.0, locs_.back(), attainment::right_limit};
  std::uint64_t below = 0;
  for (std::size_t k = 0; k < locs_.size(); ++k) {
    const double f = ref.cdf(locs_[k]);
    const double g = f * f;
    const double left = g - static_cast<double>(below) / total;
    if (left > v.minus.value) v.minus = {left, locs_[k], attainment::at_point};
    below = cums_[k];
    const double right = static_cast<double>(below) / total - g;
    if (right > v.plus.value) v.plus = {right, locs_[k], attainment::right_limit};
  }
  return v;
}

side_values statistic_evaluator::kolmogorov(std::span<const double> x) {
  const std::size_t n = x.size();
  const double total = static_cast<double>(n);
  side_values v;
  v.plus = {0.0, x.front(), attainment::left_limit};
  v.minus = {0.0, x.back(), attainment::right_limit};
  for (std::size_t k = 0; k < n; ++k) {
    const double g = reference_.cdf(x[k]);
    const double left = g - static_cast<double>(k) / total;
    if (left > v.minus.value) v.minus = {left, x[k], attainment::at_point};
    const double right = static_cast<double>(k + 1) / total - g;
    if (right > v.plus.value) v.plus = {right, x[k], attainment::right_limit};
  }
  return v;
}

stat_result compute_statistic(std::string_view test_id, const sample& s, side which,
                              const statistic_options& options) {
  statistic_evaluator ev(test_id, options);
  const side_values v = ev.evaluate(s.values());
  const sup_result& r = v.get(which);
  return {std::string(test_id), which, s.size(), r.value, r.argmax_t};
}

}  // namespace ueks
