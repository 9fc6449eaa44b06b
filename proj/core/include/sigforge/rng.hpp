/* Copyright 2026 The Sigforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef SIGFORGE_RNG_HPP_
#define SIGFORGE_RNG_HPP_

#include <cstdint>
#include <utility>

#include "sigforge/frame.hpp"

namespace sigforge {

// SplitMix64 finalizer: a bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based random stream. Draw k of a stream is mix64(key + k * gamma),
// so a (key, counter) pair fully determines every future draw. All
// distributions are implemented here rather than taken from <random>, whose
// distribution algorithms are unspecified and differ between standard
// libraries.
//
// Distributions:
//   uniform()        53-bit mantissa fill, [0, 1)
//   uniform_int()    Lemire multiply-shift with rejection, unbiased
//   normal_pair()    Marsaglia polar method, both outputs returned
class RngStream {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  constexpr explicit RngStream(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  // Uniform on [0, 1).
  double uniform() noexcept;
  // Uniform on [lo, hi). Returns lo exactly when lo == hi (including infinities).
  double uniform(double lo, double hi) noexcept;
  // Uniform integer on the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) noexcept;
  std::pair<double, double> normal_pair() noexcept;
  double normal() noexcept { return normal_pair().first; }
  // Circular complex Gaussian with unit total variance.
  Sample complex_normal() noexcept;

  // Independent child stream keyed by the next draw.
  RngStream split() noexcept { return RngStream(mix64(next_u64() ^ 0x5851f42d4c957f2dULL)); }

  friend constexpr bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

// Stream for one dataset example. Pure function of its arguments.
RngStream derive_stream(std::uint64_t dataset_seed, std::uint64_t example_index) noexcept;

}  // namespace sigforge

#endif  // SIGFORGE_RNG_HPP_
