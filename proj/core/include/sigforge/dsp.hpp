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
#ifndef SIGFORGE_DSP_HPP_
#define SIGFORGE_DSP_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "sigforge/frame.hpp"

namespace sigforge::dsp {

// sin(pi x) / (pi x), 1 at x = 0.
double sinc(double x) noexcept;

// Periodic Hann window (the spectral-analysis convention).
std::vector<double> hann_window(std::size_t n);

// Symmetric Blackman window (the filter-design convention).
std::vector<double> blackman_window(std::size_t n);

// Linear-phase low-pass FIR: Blackman-windowed sinc with -6 dB point at
// `cutoff` cycles/sample, normalized to unit DC gain. `num_taps` must be odd.
std::vector<double> windowed_sinc_lowpass(double cutoff, std::size_t num_taps);

// Full linear convolution; output has x.size() + h.size() - 1 samples.
std::vector<Sample> convolve_full(std::span<const Sample> x, std::span<const double> h);
std::vector<Sample> convolve_full(std::span<const Sample> x, std::span<const Sample> h);

// Zero-delay filtering with odd-length linear-phase taps. Output length equals
// input length; out[n] = full[n + (taps - 1) / 2].
ComplexFrame filter_same(const ComplexFrame& frame, std::span<const double> taps);

// Causal filtering; out[n] = sum_k h[k] x[n - k], output truncated to the
// input length.
ComplexFrame filter_causal(const ComplexFrame& frame, std::span<const Sample> taps);
ComplexFrame filter_causal(const ComplexFrame& frame, std::span<const double> taps);

}  // namespace sigforge::dsp

#endif  // SIGFORGE_DSP_HPP_
