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
#ifndef SIGFORGE_FRAME_HPP_
#define SIGFORGE_FRAME_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace sigforge {

// One complex baseband IQ sample. Real part is I, imaginary part is Q.
using Sample = std::complex<double>;

inline constexpr std::size_t kDefaultFrameLength = 4096;

// Fixed-length run of complex baseband samples. The sample rate is
// normalized to 1, so every frequency in the library is in cycles/sample.
class ComplexFrame {
 public:
  ComplexFrame() = default;
  explicit ComplexFrame(std::size_t length) : samples_(length) {}
  explicit ComplexFrame(std::vector<Sample> samples) : samples_(std::move(samples)) {}
  ComplexFrame(std::initializer_list<Sample> samples) : samples_(samples) {}

  static constexpr double sample_rate() noexcept { return 1.0; }

  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  Sample& operator[](std::size_t i) noexcept { return samples_[i]; }
  const Sample& operator[](std::size_t i) const noexcept { return samples_[i]; }

  std::span<Sample> samples() noexcept { return samples_; }
  std::span<const Sample> samples() const noexcept { return samples_; }

  auto begin() noexcept { return samples_.begin(); }
  auto end() noexcept { return samples_.end(); }
  auto begin() const noexcept { return samples_.begin(); }
  auto end() const noexcept { return samples_.end(); }

  std::vector<Sample>& vector() noexcept { return samples_; }
  const std::vector<Sample>& vector() const noexcept { return samples_; }

  // True when no component is NaN or infinite.
  bool all_finite() const noexcept;

  friend bool operator==(const ComplexFrame&, const ComplexFrame&) = default;

 private:
  std::vector<Sample> samples_;
};

// (1/len) * sum |x|^2. Throws InvalidArgument on an empty frame.
double mean_power(const ComplexFrame& frame);

// Scales the frame to unit mean power. Phase of every sample is unchanged.
// Throws ZeroPowerError when the frame carries no energy.
ComplexFrame normalize_unit_power(const ComplexFrame& frame);

ComplexFrame scale(const ComplexFrame& frame, double factor);

}  // namespace sigforge

#endif  // SIGFORGE_FRAME_HPP_
