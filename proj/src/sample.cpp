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

#include "ueks/sample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ueks/errors.hpp"

namespace ueks {

sample::sample(std::vector<double> values, std::optional<provenance> origin)
    : values_(std::move(values)), origin_(std::move(origin)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw domain_error("sample: non-finite observation");
  }
  std::sort(values_.begin(), values_.end());
  const auto dup = std::adjacent_find(values_.begin(), values_.end());
  if (dup != values_.end()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sample: tied observation " << *dup
        << " (continuous data assumed; use tie breaking to proceed)";
    throw tie_error(msg.str());
  }
}

std::size_t break_ties(std::vector<double>& values, double scale) {
  if (values.size() < 2) return 0;
  std::sort(values.begin(), values.end());
  const double eps = scale * (values.back() - values.front());
  const double inf = std::numeric_limits<double>::infinity();
  std::size_t moved = 0;
  std::size_t run = 0;
  double last_orig = values.front();
  double last_out = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double orig = values[i];
    run = (orig == last_orig) ? run + 1 : 0;
    double out = orig + static_cast<double>(run) * eps;
    if (out <= last_out) out = std::nextafter(last_out, inf);
    if (out != orig) ++moved;
    values[i] = out;
    last_orig = orig;
    last_out = out;
  }
  return moved;
}

}  // namespace ueks
