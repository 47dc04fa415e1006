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

#ifndef UEKS_NUMERICS_HPP_
#define UEKS_NUMERICS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace ueks {

using scalar_fn = std::function<double(double)>;

struct quadrature_config {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  // Upper bound on the number of subintervals kept by the adaptive driver.
  std::size_t max_segments = 4000;
};

struct quadrature_result {
  double value = 0.0;
  double error = 0.0;
  std::size_t segments = 0;
};

// Globally adaptive Gauss-Kronrod (G10/K21) integration over a finite
// interval. Bisects the subinterval with the largest error estimate until the
// summed estimate satisfies max(abs_tol, rel_tol*|I|). Throws
// integration_error when the segment budget runs out first.
quadrature_result integrate(const scalar_fn& f, double a, double b,
                            const quadrature_config& cfg = {});

// Sum of integrals over consecutive pieces [breaks[i], breaks[i+1]]; use it
// when the integrand has known jumps.
double integrate_pieces(const scalar_fn& f, const std::vector<double>& breaks,
                        const quadrature_config& cfg = {});

struct extremum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for a minimum of a unimodal function on [lo, hi],
// stopping when the bracket is narrower than tol.
extremum golden_section_minimize(const scalar_fn& f, double lo, double hi,
                                 double tol = 1e-10);

// Global maximisation by a uniform scan of `points` nodes followed by
// golden-section refinement inside every bracket around a local maximum of
// the scan. Returns all refined local maxima, best first.
std::vector<extremum> scan_maximize(const scalar_fn& f, double lo, double hi,
                                    std::size_t points = 1000, double tol = 1e-10);

// Bisection on the sign of a five-point central-difference derivative inside
// [lo, hi]. Returns the input guess unchanged if the derivative does not
// change sign across the bracket.
double polish_stationary_point(const scalar_fn& f, double lo, double hi,
                               double guess, double step = 1e-3);

// Richardson extrapolation for estimates e(h), e(h/2) with leading error
// term proportional to h^order.
inline double richardson(double coarse, double fine, int order = 1) {
  const double k = static_cast<double>(1u << order);
  return (k * fine - coarse) / (k - 1.0);
}

}  // namespace ueks

#endif  // UEKS_NUMERICS_HPP_
