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

#ifndef UEKS_RNG_HPP_
#define UEKS_RNG_HPP_

#include <array>
#include <cstdint>

namespace ueks {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
// pure function of (counter, key), so any draw can be addressed directly.
struct philox4x32 {
  using counter_type = std::array<std::uint32_t, 4>;
  using key_type = std::array<std::uint32_t, 2>;

  static counter_type generate(counter_type counter, key_type key) noexcept;
};

// Uniform stream addressed by (seed, stream, index). Streams are
// independent for distinct stream ids; the i-th value never depends on how
// many values were drawn before it.
class counter_stream {
 public:
  explicit counter_stream(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform(std::uint64_t index) const noexcept;

  // Fills out[0..count) with uniform(first), uniform(first+1), ...
  void fill_uniform(std::uint64_t first, double* out, std::size_t count) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  philox4x32::key_type key_;
};

// 64-bit mixing function (splitmix64 finaliser).
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace ueks

#endif  // UEKS_RNG_HPP_
