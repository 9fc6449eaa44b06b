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
#ifndef SIGFORGE_FFT_HPP_
#define SIGFORGE_FFT_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sigforge/frame.hpp"

namespace sigforge::dsp {

// Discrete Fourier transform of any length. Lengths whose prime factors are
// all below 64 use a mixed-radix Cooley-Tukey decomposition; anything else
// goes through Bluestein's chirp-z with a power-of-two inner transform.
//
// forward: X[k] = sum_n x[n] e^{-j 2 pi k n / N}
// inverse: x[n] = (1/N) sum_k X[k] e^{+j 2 pi k n / N}
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::size_t size() const noexcept { return n_; }

  // `in` and `out` must both hold size() samples and must not overlap.
  void forward(std::span<const Sample> in, std::span<Sample> out) const;
  void inverse(std::span<const Sample> in, std::span<Sample> out) const;

 private:
  struct Bluestein;

  void transform(const Sample* in, Sample* out) const;
  void work(Sample* out, const Sample* in, std::size_t fstride, const std::size_t* factors) const;
  void butterfly(Sample* out, std::size_t fstride, std::size_t p, std::size_t m) const;

  std::size_t n_ = 0;
  std::vector<std::size_t> factors_;  // (radix, remaining length) pairs
  std::vector<Sample> twiddles_;
  std::unique_ptr<Bluestein> bluestein_;
};

// Per-thread cached plan.
const FftPlan& fft_plan(std::size_t n);

std::vector<Sample> fft(std::span<const Sample> x);
std::vector<Sample> ifft(std::span<const Sample> x);

// Reorders bins so index 0 holds the most negative frequency (-0.5).
std::vector<Sample> fftshift(std::span<const Sample> x);

// Frequency in cycles/sample of DFT bin k for an n-point transform, in [-0.5, 0.5).
double bin_frequency(std::size_t k, std::size_t n) noexcept;

}  // namespace sigforge::dsp

#endif  // SIGFORGE_FFT_HPP_
