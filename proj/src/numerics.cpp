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

#include "ueks/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ueks/errors.hpp"

namespace ueks {
namespace {

struct segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const segment& other) const { return error < other.error; }
};

segment rule(const scalar_fn& f, double a, double b) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 21>;
  double err = 0.0;
  const double v = gk::integrate(f, a, b, 0, 0.0, &err);
  // With no recursion Boost reports |K - G| on the reference interval [-1, 1].
  return {a, b, v, err * 0.5 * (b - a)};
}

constexpr double kInvPhi = 0.6180339887498949;

}  // namespace

quadrature_result integrate(const scalar_fn& f, double a, double b,
                            const quadrature_config& cfg) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw domain_error("integrate: bounds must be finite");
  }
  if (a == b) return {};
  if (a > b) {
    auto r = integrate(f, b, a, cfg);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<segment> heap;
  heap.push(rule(f, a, b));
  double total = heap.top().value;
  double total_err = heap.top().error;
  // Segments too narrow to split further; their error is carried as is.
  double frozen_value = 0.0;
  double frozen_err = 0.0;
  std::size_t count = 1;

  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

  while (total_err > target() && !heap.empty()) {
    if (count >= cfg.max_segments) {
      std::ostringstream msg;
      msg << "integrate: no convergence on [" << a << ", " << b
          << "], error estimate " << total_err << " after " << count << " segments";
      throw integration_error(msg.str());
    }
    const segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 4 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen_value += worst.value;
      frozen_err += worst.error;
      total_err -= worst.error;
      if (frozen_err > target()) {
        throw integration_error("integrate: interval exhausted before tolerance was met");
      }
      continue;
    }
    const segment left = rule(f, worst.a, mid);
    const segment right = rule(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  // Re-sum to shed the drift of the running updates.
  double value = frozen_value;
  double err = frozen_err;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err, count};
}

double integrate_pieces(const scalar_fn& f, const std::vector<double>& breaks,
                        const quadrature_config& cfg) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    sum += integrate(f, breaks[i], breaks[i + 1], cfg).value;
  }
  return sum;
}

extremum golden_section_minimize(const scalar_fn& f, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw domain_error("golden_section_minimize: empty bracket");
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int iter = 0; iter < 500 && (b - a) > tol; ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  extremum best = fc <= fd ? extremum{c, fc} : extremum{d, fd};
  // The bracket ends are legitimate candidates for monotone functions.
  for (double end : {lo, hi}) {
    const double fe = f(end);
    if (fe < best.value) best = {end, fe};
  }
  return best;
}

std::vector<extremum> scan_maximize(const scalar_fn& f, double lo, double hi,
                                    std::size_t points, double tol) {
  if (points < 3) points = 3;
  std::vector<double> xs(points), fs(points);
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = (i + 1 == points) ? hi : lo + h * static_cast<double>(i);
    fs[i] = f(xs[i]);
  }
  std::vector<extremum> out;
  auto neg = [&f](double x) { return -f(x); };
  for (std::size_t i = 0; i < points; ++i) {
    const bool left_ok = i == 0 || fs[i] >= fs[i - 1];
    const bool right_ok = i + 1 == points || fs[i] >= fs[i + 1];
    if (!(left_ok && right_ok)) continue;
    // Skip the interior of flat runs; keep their first node only.
    if (i > 0 && fs[i] == fs[i - 1]) continue;
    const double a = xs[i == 0 ? 0 : i - 1];
    const double b = xs[i + 1 == points ? i : i + 1];
    extremum e = golden_section_minimize(neg, a, b, tol);
    e.value = -e.value;
    if (fs[i] > e.value) e = {xs[i], fs[i]};
    out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const extremum& l, const extremum& r) { return l.value > r.value; });
  return out;
}

double polish_stationary_point(const scalar_fn& f, double lo, double hi, double guess,
                               double step) {
  // A small differencing step keeps the stencil's truncation bias below the
  // rounding noise; the bracket itself stays step wide.
  const double h = std::min(step, 1e-4 * std::max(1.0, std::abs(guess)));
  auto deriv = [&](double x) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
  };
  double a = std::max(lo, guess - step), b = std::min(hi, guess + step);
  if (!(a < b)) return guess;
  double da = deriv(a), db = deriv(b);
  if (!(da > 0 && db < 0)) return guess;
  for (int iter = 0; iter < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++iter) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double dm = deriv(m);
    if (dm > 0) {
      a = m;
    } else if (dm < 0) {
      b = m;
    } else {
      return m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace ueks
