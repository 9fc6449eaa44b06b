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

#ifndef SIGFORGE_IMPAIRMENTS_HPP_
#define SIGFORGE_IMPAIRMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "sigforge/classes.hpp"
#include "sigforge/frame.hpp"
#include "sigforge/modulators.hpp"
#include "sigforge/record.hpp"
#include "sigforge/rng.hpp"

namespace sigforge::impair {

// Probabilities and parameter ranges of the impaired dataset. Every uniform
// range is [lo, hi); integer ranges are closed.
struct ImpairmentProfile {
  double phase_shift_prob = 0.9;
  double phase_shift_max = std::numbers::pi;  // U(-max, max) rad

  double time_shift_prob = 0.9;
  int time_shift_max = 32;  // integer U[-max, max] samples

  double freq_shift_prob = 0.7;
  double freq_shift_max = 0.16;  // U(-max, max) cycles/sample

  double rayleigh_prob = 0.5;
  int rayleigh_min_taps = 2;
  int rayleigh_max_taps = 20;

  double iq_imbalance_prob = 0.9;
  double iq_amp_db_max = 3.0;
  double iq_phase_max = std::numbers::pi / 180.0;
  double iq_dc_max = 0.1;

  double resample_prob = 0.5;
  double resample_min = 0.75;
  double resample_max = 1.5;

  double esn0_min_db = -2.0;
  double esn0_max_db = 30.0;

  // Generation-time pulse-shape randomization.
  bool random_pulse_shape = true;

  static ImpairmentProfile standard() { return {}; }
  // Every gate closed, no noise, no pulse-shape randomization.
  static ImpairmentProfile none();

  // Throws InvalidArgument on probabilities outside [0, 1] or inverted ranges.
  void validate() const;
};

inline constexpr double kRrcAlphaMin = 0.15;
inline constexpr double kRrcAlphaMax = 0.60;
inline constexpr double kGaussianBtMin = 0.1;
inline constexpr double kGaussianBtMax = 0.5;
inline constexpr double kFskCutoffMin = 0.15625;
inline constexpr double kFskCutoffMax = 0.46875;
inline constexpr std::size_t kFskLowpassTaps = 257;

// Noise variance per complex sample for a unit-power signal:
// sps * 10^(-esn0_db / 10).
double noise_variance(double esn0_db, double samples_per_symbol);

// Circular complex Gaussian noise scaled so its realized mean power is
// exactly `variance`.
ComplexFrame awgn_noise(std::size_t length, double variance, RngStream& rng);

// x + awgn_noise(len, noise_variance(esn0_db, sps)). Infinite Es/N0 returns
// the frame unchanged without drawing. Throws InvalidArgument when sps <= 0.
ComplexFrame add_awgn(const ComplexFrame& frame, double esn0_db, double samples_per_symbol,
                      RngStream& rng);

double random_pulse_shape_linear(RngStream& rng);
double random_pulse_shape_gaussian(RngStream& rng);

// Low-pass at `cutoff` cycles/sample, then rate change by 4 * cutoff so the
// retained band lands on 0.25 cycles/sample; zero-padded or truncated to
// `length` (0 keeps the input length).
ComplexFrame fsk_lpf_resample(const ComplexFrame& frame, double cutoff, std::size_t length = 0);
// Draws cutoff ~ U(kFskCutoffMin, kFskCutoffMax); returns (frame, cutoff).
std::pair<ComplexFrame, double> fsk_lpf_resample(const ComplexFrame& frame, RngStream& rng,
                                                 std::size_t length = 0);
// Samples per symbol of an 8-sps FSK frame after fsk_lpf_resample.
constexpr double fsk_resampled_sps(double cutoff) noexcept { return 32.0 * cutoff; }

ComplexFrame phase_shift(const ComplexFrame& frame, double phi);
// Positive shift delays; vacated samples are zero.
ComplexFrame time_shift(const ComplexFrame& frame, std::int64_t shift);
ComplexFrame freq_shift(const ComplexFrame& frame, double freq);

// h[k] = sqrt(p_k / 2) (g1 + j g2), p_k proportional to 1 - k / num_taps,
// sum p_k = 1. Any num_taps >= 1 is accepted here.
std::vector<Sample> rayleigh_taps(int num_taps, RngStream& rng);
// Causal same-length FIR with fresh rayleigh_taps. num_taps must be in 2..20.
ComplexFrame rayleigh_channel(const ComplexFrame& frame, int num_taps, RngStream& rng);

// I' = 10^(a/40) Re x, Q' = 10^(-a/40) Im x;
// y = cos(phi/2) x' + j sin(phi/2) conj(x') + dc.
ComplexFrame iq_imbalance(const ComplexFrame& frame, double amp_db, double phase_rad,
                          double dc_offset);

// Best rational p/q with q <= max_denominator.
std::pair<std::int64_t, std::int64_t> rational_approximation(double value,
                                                             std::int64_t max_denominator = 1024);

// Rate change by `rate` = output rate / input rate through a polyphase
// windowed-sinc filter. Output has ceil(len * p / q) samples; rate 1 is an
// exact copy.
ComplexFrame resample(const ComplexFrame& frame, double rate);
// resample() then zero-pad or truncate back to the input length.
ComplexFrame random_resample(const ComplexFrame& frame, double rate);

// Clean waveform with randomized pulse shaping, plus the step describing it.
struct ShapedSource {
  mod::Waveform waveform;
  std::optional<ImpairmentStep> shaping;
};
ShapedSource gen_impaired_source(int class_index, RngStream& rng,
                                 std::size_t length = kDefaultFrameLength,
                                 bool randomize = true);

// Intermediate values exposed for measurement.
struct ChainTrace {
  ComplexFrame pre_noise;  // unit-power frame the noise was added to
  ComplexFrame noise;      // empty when Es/N0 is infinite
  double samples_per_symbol = 0.0;
};

struct ChainResult {
  ComplexFrame frame;
  ImpairmentRecord record;
  SignalDescriptor descriptor;  // effective sps and snr_db filled in
};

// Phase, time, frequency, Rayleigh, IQ imbalance, resample, each behind its
// own Bernoulli gate; then unit-power normalization and AWGN at a drawn
// Es/N0. Skipped steps are absent from the record.
ChainResult apply_impairment_chain(const ComplexFrame& clean, const SignalDescriptor& descriptor,
                                   const ImpairmentProfile& profile, RngStream& rng,
                                   ChainTrace* trace = nullptr);

// Re-applies the chain steps of `record` to `clean`. Generation-time steps
// are skipped; they are already part of `clean`.
ComplexFrame replay(const ImpairmentRecord& record, const ComplexFrame& clean,
                    ChainTrace* trace = nullptr);

}  // namespace sigforge::impair

#endif  // SIGFORGE_IMPAIRMENTS_HPP_
