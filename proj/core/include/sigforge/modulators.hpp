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
#ifndef SIGFORGE_MODULATORS_HPP_
#define SIGFORGE_MODULATORS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sigforge/classes.hpp"
#include "sigforge/frame.hpp"
#include "sigforge/rng.hpp"

namespace sigforge::mod {

inline constexpr int kLinearSamplesPerSymbol = 2;
inline constexpr int kRrcSpanSymbols = 11;
inline constexpr double kCleanRrcAlpha = 0.35;
inline constexpr double kCleanGaussianBt = 0.35;

struct ConstellationTable {
  std::vector<Sample> points;
  int bits_per_symbol = 0;  // log2(M) when M is a power of two, 0 otherwise
};

// Symbol alphabet of a linear-modulation class (ASK, PAM, PSK, QAM).
//   ASK  {-1 + 2k/(M-1)}          real axis, symmetric
//   PAM  {k/(M-1)}                real axis, one-sided (OOK is 2-PAM)
//   PSK  {e^{j 2 pi k / M}}       k = 0 sits on +1
//   QAM  square sqrt(M) x sqrt(M) grid on [-1, 1]^2; 32QAM is an 8x4 grid;
//        *_Cross removes (s/6 x s/6) corner blocks from an s x s grid
// With `normalize` the table is scaled to unit mean power.
// Throws InvalidArgument for FSK and OFDM classes.
ConstellationTable build_constellation(int class_index, bool normalize = true);

// Subcarrier alphabets available to OFDM.
enum class SubcarrierMod : std::uint8_t { kBpsk, kQpsk, kQam16, kQam64, kQam256, kQam1024 };
inline constexpr std::array<SubcarrierMod, 6> kSubcarrierMods{
    SubcarrierMod::kBpsk,  SubcarrierMod::kQpsk,   SubcarrierMod::kQam16,
    SubcarrierMod::kQam64, SubcarrierMod::kQam256, SubcarrierMod::kQam1024};
std::string_view to_string(SubcarrierMod mod) noexcept;
const ConstellationTable& subcarrier_constellation(SubcarrierMod mod);

struct RrcFilterSpec {
  double alpha = kCleanRrcAlpha;
  int samples_per_symbol = kLinearSamplesPerSymbol;
  int span_symbols = kRrcSpanSymbols;
};

// Root-raised-cosine impulse response sampled at t = n / sps for
// |n| <= span * sps / 2, unit energy. The t = 0 and t = +-1/(4 alpha) points
// use their analytic limits.
std::vector<double> rrc_taps(const RrcFilterSpec& spec);

struct GaussianFilterSpec {
  double bt = kCleanGaussianBt;
  int samples_per_symbol = kLinearSamplesPerSymbol;
  int span_symbols = 0;  // 0 selects gaussian_span_symbols(bt)
};

// Smallest even span covering +-5 sigma, never below 4 symbols.
int gaussian_span_symbols(double bt);

// Gaussian frequency pulse with sigma = sqrt(ln 2) / (2 pi BT) symbols,
// truncated to the span, unit sum.
std::vector<double> gaussian_taps(const GaussianFilterSpec& spec);

// A synthesized example before any channel effects.
struct Waveform {
  ComplexFrame frame;
  SignalDescriptor descriptor;
  // Linear mods: constellation index of the symbol peaking at sample j * sps.
  // FSK: tone index of the symbol starting at sample j * sps.
  std::vector<std::uint32_t> symbols;
};

// Uniform random symbols, RRC-shaped at 2 samples/symbol, cropped to the
// filter's steady state and normalized to unit power.
Waveform gen_linear_mod(int class_index, RngStream& rng, double alpha = kCleanRrcAlpha,
                        std::size_t length = kDefaultFrameLength);

struct FskSpec {
  int order = 2;
  FskVariant variant = FskVariant::kFsk;
  double bt = kCleanGaussianBt;  // GFSK/GMSK only

  static FskSpec for_class(int class_index);

  bool gaussian() const noexcept {
    return variant == FskVariant::kGfsk || variant == FskVariant::kGmsk;
  }
  double modulation_index() const noexcept {
    return (variant == FskVariant::kMsk || variant == FskVariant::kGmsk) ? 0.5 : 1.0;
  }
  int samples_per_symbol() const noexcept { return gaussian() ? 2 : 8; }
};

// Instantaneous frequency (cycles/sample) of tone k:
//   h * (2k - M + 1) / (M * sps)
// The tone set spans the same deviation for every order M, so no order
// aliases; for M = 2 this is the textbook +-h / (2 sps).
double tone_frequency(const FskSpec& spec, int k);

// Continuous-phase FSK: x[n] = e^{j theta[n]}, theta accumulating
// 2 pi f[n] where f is the per-symbol tone train (Gaussian-smoothed for
// GFSK/GMSK). Constant envelope by construction.
Waveform gen_fsk(const FskSpec& spec, RngStream& rng, std::size_t length = kDefaultFrameLength);

enum class EdgeTreatment : std::uint8_t { kLowpass, kWindow, kNone };

inline constexpr double kOfdmLowpassCutoff = 0.27;
inline constexpr std::size_t kOfdmLowpassTaps = 129;

struct OfdmSpec {
  int num_subcarriers = 64;
  bool per_subcarrier_random = false;
  double cp_fraction = 0.125;
  bool dc_present = true;
  EdgeTreatment edge = EdgeTreatment::kNone;

  // Inverse-transform size; the N subcarriers fill the central half of it.
  std::size_t fft_size() const noexcept { return 2 * static_cast<std::size_t>(num_subcarriers); }
  std::size_t cp_length() const noexcept;
  std::size_t symbol_length() const noexcept { return fft_size() + cp_length(); }
  // Raised-cosine taper length for EdgeTreatment::kWindow.
  std::size_t window_length() const noexcept { return cp_length() / 2; }
};

// Subcarrier values per OFDM symbol; entry i of a row is subcarrier i, with
// i = N/2 on DC and i = 0 the most negative frequency.
using OfdmGrid = std::vector<std::vector<Sample>>;

std::size_t ofdm_symbols_needed(const OfdmSpec& spec, std::size_t length);

// Draws subcarrier points: one alphabet for the whole frame, or one alphabet
// per subcarrier when per_subcarrier_random is set. DC is zero when absent.
OfdmGrid draw_ofdm_grid(const OfdmSpec& spec, std::size_t num_symbols, RngStream& rng);

// Inverse DFT of one row onto fft_size() samples (no cyclic prefix).
std::vector<Sample> ofdm_symbol_body(const OfdmSpec& spec, std::span<const Sample> subcarriers);

// CP insertion, edge treatment and cropping to `length`. Not normalized.
// With kNone the frame starts at the first symbol's cyclic prefix.
ComplexFrame ofdm_modulate(const OfdmSpec& spec, const OfdmGrid& grid, std::size_t length);

// Clean-dataset option draws, each an independent fair coin.
OfdmSpec draw_clean_ofdm_spec(int num_subcarriers, RngStream& rng);

Waveform gen_ofdm(const OfdmSpec& spec, RngStream& rng, std::size_t length = kDefaultFrameLength);

// Dispatches to the family generator with clean defaults.
Waveform gen_clean(int class_index, RngStream& rng, std::size_t length = kDefaultFrameLength);

}  // namespace sigforge::mod

#endif  // SIGFORGE_MODULATORS_HPP_
