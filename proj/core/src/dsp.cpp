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
#include "sigforge/dsp.hpp"

#include <cmath>
#include <numbers>

#include "sigforge/error.hpp"

namespace sigforge::dsp {
namespace {

template <typename Tap>
std::vector<Sample> convolve(std::span<const Sample> x, std::span<const Tap> h) {
  if (x.empty() || h.empty()) return {};
  std::vector<Sample> out(x.size() + h.size() - 1);
  for (std::size_t k = 0; k < h.size(); ++k) {
    const Tap tap = h[k];
    Sample* dst = out.data() + k;
    for (std::size_t n = 0; n < x.size(); ++n) dst[n] += x[n] * tap;
  }
  return out;
}

template <typename Tap>
ComplexFrame causal(const ComplexFrame& frame, std::span<const Tap> taps) {
  ComplexFrame out(frame.size());
  const std::size_t len = frame.size();
  for (std::size_t k = 0; k < taps.size() && k < len; ++k) {
    const Tap tap = taps[k];
    for (std::size_t n = k; n < len; ++n) out[n] += frame[n - k] * tap;
  }
  return out;
}

}  // namespace

double sinc(double x) noexcept {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  }
  return w;
}

std::vector<double> blackman_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / denom;
    w[i] = 0.42 - 0.5 * std::cos(2.0 * std::numbers::pi * x) +
           0.08 * std::cos(4.0 * std::numbers::pi * x);
  }
  return w;
}

std::vector<double> windowed_sinc_lowpass(double cutoff, std::size_t num_taps) {
  if (!(cutoff > 0.0 && cutoff <= 0.5)) {
    throw InvalidArgument("windowed_sinc_lowpass: cutoff must be in (0, 0.5]");
  }
  if (num_taps % 2 == 0) throw InvalidArgument("windowed_sinc_lowpass: num_taps must be odd");
  const std::vector<double> window = blackman_window(num_taps);
  const auto center = static_cast<double>(num_taps / 2);
  std::vector<double> taps(num_taps);
  double sum = 0.0;
  for (std::size_t i = 0; i < num_taps; ++i) {
    const double t = static_cast<double>(i) - center;
    taps[i] = 2.0 * cutoff * sinc(2.0 * cutoff * t) * window[i];
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

std::vector<Sample> convolve_full(std::span<const Sample> x, std::span<const double> h) {
  return convolve(x, h);
}

std::vector<Sample> convolve_full(std::span<const Sample> x, std::span<const Sample> h) {
  return convolve(x, h);
}

ComplexFrame filter_same(const ComplexFrame& frame, std::span<const double> taps) {
  if (taps.size() % 2 == 0) throw InvalidArgument("filter_same: taps must have odd length");
  const std::vector<Sample> full = convolve(frame.samples(), taps);
  const std::size_t delay = taps.size() / 2;
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) out[n] = full[n + delay];
  return out;
}

ComplexFrame filter_causal(const ComplexFrame& frame, std::span<const Sample> taps) {
  return causal(frame, taps);
}

ComplexFrame filter_causal(const ComplexFrame& frame, std::span<const double> taps) {
  return causal(frame, taps);
}

}  // namespace sigforge::dsp
