// Copyright 2026 The omlab Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <utility>

// Counter-based random numbers: Philox4x32-10 (Salmon et al., SC'11) with
// Gaussians by inverse transform (Wichura's AS241 quantile).  Every draw is a
// pure function of (seed, counter), so streams can be split by path and step
// without any shared generator state.
namespace omlab::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

Counter philox4x32_10(Counter ctr, Key key) noexcept;

inline Key key_from_seed(std::uint64_t seed) noexcept {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

// 52-bit midpoint grid in the open interval (0, 1); the extremes are
// 2^-53 and 1 - 2^-53, both exact.
inline double open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

// Inverse standard normal CDF for u in (0, 1), relative accuracy ~1e-16.
double normal_quantile(double u) noexcept;

// Two independent N(0, 1) draws addressed by (seed, index, sub, stream).
std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t index, std::uint32_t sub,
                                        std::uint32_t stream = 0) noexcept;

// Sequential view over one stream, for code that just wants "the next draw".
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint32_t stream) noexcept : key_(key_from_seed(seed)), stream_(stream) {}

  double uniform() noexcept;
  double normal() noexcept { return normal_quantile(uniform()); }

 private:
  Key key_;
  std::uint32_t stream_;
  std::uint64_t block_ = 0;
  Counter out_{};
  int used_ = 2;
};

}  // namespace omlab::rng
