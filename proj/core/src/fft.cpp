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
#include "sigforge/fft.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "sigforge/error.hpp"

namespace sigforge::dsp {
namespace {

constexpr std::size_t kMaxDirectRadix = 64;

std::vector<std::size_t> factorize(std::size_t n, bool* needs_bluestein) {
  std::vector<std::size_t> factors;
  *needs_bluestein = false;
  std::size_t p = 4;
  const auto max_p = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  while (n > 1) {
    while (n % p != 0) {
      switch (p) {
        case 4: p = 2; break;
        case 2: p = 3; break;
        default: p += 2; break;
      }
      if (p > max_p) p = n;
    }
    if (p >= kMaxDirectRadix) *needs_bluestein = true;
    n /= p;
    factors.push_back(p);
    factors.push_back(n);
  }
  return factors;
}

Sample twiddle(std::size_t k, std::size_t n) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

struct FftPlan::Bluestein {
  std::size_t m = 0;
  std::unique_ptr<FftPlan> inner;
  std::vector<Sample> chirp;      // e^{-j pi k^2 / n}
  std::vector<Sample> kernel_ft;  // FFT of the conjugate chirp, wrapped
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("FftPlan: size must be positive");
  bool needs_bluestein = false;
  factors_ = factorize(n, &needs_bluestein);
  if (!needs_bluestein) {
    twiddles_.resize(n);
    for (std::size_t k = 0; k < n; ++k) twiddles_[k] = twiddle(k, n);
    return;
  }

  factors_.clear();
  auto b = std::make_unique<Bluestein>();
  b->m = 1;
  while (b->m < 2 * n - 1) b->m <<= 1;
  b->inner = std::make_unique<FftPlan>(b->m);
  b->chirp.resize(n);
  const std::size_t two_n = 2 * n;
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small and exact.
    const std::size_t k2 = static_cast<std::size_t>(
        (static_cast<unsigned long long>(k) * k) % static_cast<unsigned long long>(two_n));
    const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    b->chirp[k] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<Sample> kernel(b->m);
  kernel[0] = std::conj(b->chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    kernel[k] = std::conj(b->chirp[k]);
    kernel[b->m - k] = std::conj(b->chirp[k]);
  }
  b->kernel_ft.resize(b->m);
  b->inner->forward(kernel, b->kernel_ft);
  bluestein_ = std::move(b);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<const Sample> in, std::span<Sample> out) const {
  if (in.size() != n_ || out.size() != n_) throw InvalidArgument("FftPlan: size mismatch");
  transform(in.data(), out.data());
}

void FftPlan::inverse(std::span<const Sample> in, std::span<Sample> out) const {
  if (in.size() != n_ || out.size() != n_) throw InvalidArgument("FftPlan: size mismatch");
  std::vector<Sample> conj_in(n_);
  for (std::size_t i = 0; i < n_; ++i) conj_in[i] = std::conj(in[i]);
  transform(conj_in.data(), out.data());
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = std::conj(out[i]) * inv_n;
}

void FftPlan::transform(const Sample* in, Sample* out) const {
  if (n_ == 1) {
    out[0] = in[0];
    return;
  }
  if (!bluestein_) {
    work(out, in, 1, factors_.data());
    return;
  }
  const Bluestein& b = *bluestein_;
  std::vector<Sample> a(b.m);
  for (std::size_t k = 0; k < n_; ++k) a[k] = in[k] * b.chirp[k];
  std::vector<Sample> spectrum(b.m);
  b.inner->forward(a, spectrum);
  for (std::size_t k = 0; k < b.m; ++k) spectrum[k] *= b.kernel_ft[k];
  b.inner->inverse(spectrum, a);
  for (std::size_t k = 0; k < n_; ++k) out[k] = a[k] * b.chirp[k];
}

void FftPlan::work(Sample* out, const Sample* in, std::size_t fstride,
                   const std::size_t* factors) const {
  const std::size_t p = factors[0];
  const std::size_t m = factors[1];
  Sample* const begin = out;
  Sample* const end = out + p * m;
  if (m == 1) {
    do {
      *out = *in;
      in += fstride;
    } while (++out != end);
  } else {
    do {
      work(out, in, fstride * p, factors + 2);
      in += fstride;
    } while ((out += m) != end);
  }
  butterfly(begin, fstride, p, m);
}

void FftPlan::butterfly(Sample* out, std::size_t fstride, std::size_t p, std::size_t m) const {
  const Sample* tw = twiddles_.data();
  if (p == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      const Sample t = out[k + m] * tw[k * fstride];
      out[k + m] = out[k] - t;
      out[k] += t;
    }
    return;
  }
  if (p == 4) {
    for (std::size_t k = 0; k < m; ++k) {
      const Sample s0 = out[k + m] * tw[k * fstride];
      const Sample s1 = out[k + 2 * m] * tw[2 * k * fstride];
      const Sample s2 = out[k + 3 * m] * tw[3 * k * fstride];
      const Sample s5 = out[k] - s1;
      const Sample sum = out[k] + s1;
      const Sample s3 = s0 + s2;
      const Sample s4 = s0 - s2;
      out[k + 2 * m] = sum - s3;
      out[k] = sum + s3;
      out[k + m] = {s5.real() + s4.imag(), s5.imag() - s4.real()};
      out[k + 3 * m] = {s5.real() - s4.imag(), s5.imag() + s4.real()};
    }
    return;
  }
  std::array<Sample, kMaxDirectRadix> scratch{};
  for (std::size_t u = 0; u < m; ++u) {
    std::size_t k = u;
    for (std::size_t q = 0; q < p; ++q, k += m) scratch[q] = out[k];
    k = u;
    for (std::size_t q1 = 0; q1 < p; ++q1, k += m) {
      std::size_t twidx = 0;
      Sample acc = scratch[0];
      for (std::size_t q = 1; q < p; ++q) {
        twidx += fstride * k;
        if (twidx >= n_) twidx -= n_;
        acc += scratch[q] * tw[twidx];
      }
      out[k] = acc;
    }
  }
}

const FftPlan& fft_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

std::vector<Sample> fft(std::span<const Sample> x) {
  std::vector<Sample> out(x.size());
  fft_plan(x.size()).forward(x, out);
  return out;
}

std::vector<Sample> ifft(std::span<const Sample> x) {
  std::vector<Sample> out(x.size());
  fft_plan(x.size()).inverse(x, out);
  return out;
}

std::vector<Sample> fftshift(std::span<const Sample> x) {
  const std::size_t n = x.size();
  std::vector<Sample> out(n);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i) out[i] = x[(i + n - half) % n];
  return out;
}

double bin_frequency(std::size_t k, std::size_t n) noexcept {
  const auto shifted = static_cast<double>(k) / static_cast<double>(n);
  return shifted >= 0.5 ? shifted - 1.0 : shifted;
}

}  // namespace sigforge::dsp
