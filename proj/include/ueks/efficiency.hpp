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

#ifndef UEKS_EFFICIENCY_HPP_
#define UEKS_EFFICIENCY_HPP_

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueks/distributions.hpp"

namespace ueks {

class alternative_family {
 public:
  using member_fn = std::function<distribution(double)>;

  alternative_family(std::string id, member_fn member, null_family null);

  const std::string& id() const noexcept { return id_; }
  distribution member(double theta) const;
  null_family null() const noexcept { return null_; }

  // weibull, makeham, normshift, expscale.
  static const alternative_family& builtin(std::string_view id);
  static std::span<const std::string_view> builtin_ids();

 private:
  std::string id_;
  member_fn member_;
  null_family null_;
};

// Almost-sure limit of the two-sided statistic when the data follow alt.
double population_limit(std::string_view test_id, const distribution& alt);

inline constexpr std::array<double, 3> kLocalThetas{0.02, 0.01, 0.005};

struct local_coefficient {
  double coeff = 0.0;
  std::array<double, 3> estimates{};
  std::vector<std::string> flags;
};

// lim 2 c b(theta)^2 / theta^2.
local_coefficient local_slope_coeff(std::string_view test_id, const alternative_family& alt);

// lim 2 K*(theta) / theta^2.
local_coefficient local_kl_coeff(const alternative_family& alt);

struct efficiency_report {
  std::string test_id;
  std::string alt_id;
  double slope_coeff = 0.0;
  double kl_coeff = 0.0;
  double efficiency = 0.0;
  std::array<double, 3> thetas = kLocalThetas;
  std::array<double, 3> slope_estimates{};
  std::array<double, 3> kl_estimates{};
  std::vector<std::string> flags;
};

efficiency_report local_efficiency(std::string_view test_id, const alternative_family& alt);

}  // namespace ueks

#endif  // UEKS_EFFICIENCY_HPP_
