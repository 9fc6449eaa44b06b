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
#include "sigforge/rng.hpp"

#include <cmath>
#include <numbers>

#include "sigforge/error.hpp"

namespace sigforge {

namespace {
__extension__ typedef unsigned __int128 Uint128;
}  // namespace

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) noexcept {
  if (lo == hi) return lo;
  return lo + (hi - lo) * uniform();
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidArgument("uniform_int: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
  // Lemire: take the high word of a 128-bit product, reject the biased sliver.
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const Uint128 product = static_cast<Uint128>(next_u64()) * range;
    if (static_cast<std::uint64_t>(product) >= threshold) {
      return lo + static_cast<std::int64_t>(product >> 64);
    }
  }
}

bool RngStream::bernoulli(double p) noexcept { return uniform() < p; }

std::pair<double, double> RngStream::normal_pair() noexcept {
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      return {u * f, v * f};
    }
  }
}

Sample RngStream::complex_normal() noexcept {
  const auto [a, b] = normal_pair();
  constexpr double kHalfRoot = 1.0 / std::numbers::sqrt2;
  return {a * kHalfRoot, b * kHalfRoot};
}

RngStream derive_stream(std::uint64_t dataset_seed, std::uint64_t example_index) noexcept {
  const std::uint64_t seed_key = mix64(dataset_seed ^ 0x243f6a8885a308d3ULL);
  const std::uint64_t index_key = example_index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL;
  return RngStream(mix64(seed_key ^ mix64(index_key)));
}

}  // namespace sigforge
