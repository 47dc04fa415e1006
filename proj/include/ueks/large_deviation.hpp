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

#ifndef UEKS_LARGE_DEVIATION_HPP_
#define UEKS_LARGE_DEVIATION_HPP_

#include <string>

#include "ueks/kernels.hpp"

namespace ueks {

// Kolmogorov's rate function for the one-sided KS statistic. Returns +inf
// for t > 1 - a and uses 0 ln 0 = 0.
double kolmogorov_f(double a, double t);

// inf over t in (0, 1) of kolmogorov_f(a, t).
double kolmogorov_f0(double a);

struct variance_max {
  double t_star = 0.0;
  double phi0_sq = 0.0;
};

// Global maximum of the variance function; ties go to the smallest |t|.
variance_max maximize_variance(const kernel_family& fam);

struct rate_function {
  double leading_coeff = 0.0;  // 1 / (2 m^2 phi0^2)
  int degree = 0;
  double phi0_sq = 0.0;
  double argmax_t = 0.0;
  std::string family_id;
};

rate_function ld_leading_coeff(const kernel_family& fam);

// Exponential bound for a bounded centred U-statistic of degree m whose
// kernel is bounded by M and whose projection has variance sigma_sq.
double arcones_bound(long n, double z, int m, double sigma_sq, double M);
double arcones_constant(int m, double M);

// 4^n exp(-n tau ln N) bound for P(Bin(n, 1/N) > n tau).
double binomial_tail_bound(long n, long N, double tau);

}  // namespace ueks

#endif  // UEKS_LARGE_DEVIATION_HPP_
