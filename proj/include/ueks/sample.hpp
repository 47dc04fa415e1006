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

#ifndef UEKS_SAMPLE_HPP_
#define UEKS_SAMPLE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ueks {

struct provenance {
  std::uint64_t seed = 0;
  std::string distribution;
};

// Sorted, tie-free observations. Construction sorts its input and rejects
// duplicates and non-finite values.
class sample {
 public:
  explicit sample(std::vector<double> values,
                  std::optional<provenance> origin = std::nullopt);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::optional<provenance>& origin() const noexcept { return origin_; }

 private:
  std::vector<double> values_;
  std::optional<provenance> origin_;
};

// Deterministic tie breaking: sorts and shifts the k-th repeat of a value by
// k*eps where eps = scale * (max - min), stepping at least one ulp. Returns
// the number of values that were moved.
std::size_t break_ties(std::vector<double>& values, double scale = 1e-12);

}  // namespace ueks

#endif  // UEKS_SAMPLE_HPP_
