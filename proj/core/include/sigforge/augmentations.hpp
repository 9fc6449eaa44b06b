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

#ifndef SIGFORGE_AUGMENTATIONS_HPP_
#define SIGFORGE_AUGMENTATIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigforge/frame.hpp"
#include "sigforge/rng.hpp"

namespace sigforge::aug {

// --- Deterministic transforms ------------------------------------------------

// Reverses sample order; with undo_inversion the result is conjugated so the
// spectrum keeps its orientation.
ComplexFrame time_reversal(const ComplexFrame& frame, bool undo_inversion);
// conj(x)
ComplexFrame spectral_inversion(const ComplexFrame& frame);
// Swaps I and Q, which equals j * conj(x).
ComplexFrame channel_swap(const ComplexFrame& frame);
// -x
ComplexFrame amplitude_reversal(const ComplexFrame& frame);

enum class DropFill : std::uint8_t { kFront, kBack, kMean, kZero };

struct Region {
  std::size_t start = 0;
  std::size_t length = 0;
};

// Replaces every region. kFront copies the last sample before the region that
// is not itself dropped (falling back to kBack at the frame start), kBack the
// next sample after it, kMean the mean of the input frame.
ComplexFrame fill_regions(const ComplexFrame& frame, std::span<const Region> regions, DropFill fill);

enum class Rounding : std::uint8_t { kFloor, kMiddle, kCeiling };

// Splits [-m, m] into num_levels equal regions and maps each component of
// each sample to the lower edge, center or upper edge of its region.
// m defaults to the largest absolute component of the frame.
ComplexFrame quantize(const ComplexFrame& frame, int num_levels, Rounding rounding,
                      std::optional<double> full_scale = std::nullopt);

// Samples [start, len) scaled by `factor`.
ComplexFrame magnitude_rescale(const ComplexFrame& frame, std::size_t start, double factor);

enum class Band : std::uint8_t { kLower, kUpper, kBoth };

// Raised-cosine spectral taper over the outer `edge_frac` (cycles/sample) of
// the chosen band edge(s). Gain is 1 at |f| = 0.5 - edge_frac and 0 at 0.5.
ComplexFrame signal_rolloff(const ComplexFrame& frame, Band side, double edge_frac);

// Clamps I and Q independently to +-percentage * (largest absolute component).
ComplexFrame clip(const ComplexFrame& frame, double percentage);

// y[n] = x[n] + (x[n] - x[n-1]), y[0] = x[0].
ComplexFrame add_slope(const ComplexFrame& frame);

// Log-domain automatic gain control. Levels and gains are natural-log
// magnitudes; the output is x[n] * e^{gain[n]}.
struct AgcParams {
  double initial_gain = 0.0;
  double level_alpha = 0.95;       // smoothing of the level estimate
  double track_alpha = 0.0005;     // |error| <= track_range
  double overflow_alpha = 0.1;     // level above high_level
  double acquire_alpha = 0.01;     // |error| > track_range
  double reference_level = 0.0;
  double track_range = 0.5;
  double low_level = -10.0;        // gain frozen at or below this level
  double high_level = 3.0;
};
// Returns the output; `gain_trace`, when given, receives gain[n].
ComplexFrame agc(const ComplexFrame& frame, const AgcParams& params,
                 std::vector<double>* gain_trace = nullptr);

// --- Randomized transforms ---------------------------------------------------

// Regions covering about drop_rate * len samples, lengths in
// [min_region, max_region], disjoint.
std::vector<Region> draw_drop_regions(std::size_t length, RngStream& rng, double drop_rate,
                                      std::size_t min_region, std::size_t max_region);
ComplexFrame drop_samples(const ComplexFrame& frame, RngStream& rng, double drop_rate,
                          std::size_t min_region, std::size_t max_region, DropFill fill);

enum class CutoutFill : std::uint8_t { kZeros, kOnes, kLowNoise, kAvgNoise, kHighNoise };
// Noise-fill power relative to the frame's mean power.
inline constexpr double kCutoutLowNoise = 0.01;
inline constexpr double kCutoutAvgNoise = 1.0;
inline constexpr double kCutoutHighNoise = 100.0;

// One contiguous region of round(duration_frac * len) samples at a random
// start is replaced by the fill.
ComplexFrame cutout(const ComplexFrame& frame, RngStream& rng, double duration_frac, CutoutFill fill);

// Consecutive patches with lengths drawn in [min_patch, max_patch]; each
// patch is shuffled with probability shuffle_ratio.
ComplexFrame patch_shuffle(const ComplexFrame& frame, RngStream& rng, std::size_t min_patch,
                           std::size_t max_patch, double shuffle_ratio);

// Random walk with steps U(-drift_rate, drift_rate) that resets to 0 when it
// leaves [-max_drift, max_drift]. Starts at 0.
std::vector<double> bounded_walk(std::size_t length, RngStream& rng, double drift_rate, double max_drift);

// Frequency offset follows bounded_walk; phase accumulates 2 pi f[n].
ComplexFrame lo_drift(const ComplexFrame& frame, RngStream& rng, double drift_rate, double max_drift);
// Gain 1 + bounded_walk[n].
ComplexFrame gain_drift(const ComplexFrame& frame, RngStream& rng, double drift_rate, double max_drift);

// Per-sample SNR (dB, relative to the frame's mean power) that moves
// linearly between snr_low_db and snr_high_db, reversing direction at
// `inflections` random interior points.
std::vector<double> snr_trajectory(std::size_t length, RngStream& rng, double snr_low_db,
                                   double snr_high_db, int inflections);
ComplexFrame time_varying_noise(const ComplexFrame& frame, RngStream& rng, double snr_low_db,
                                double snr_high_db, int inflections);

// y = alpha * (x (*) h) + (1 - alpha) x with h ~ U(0, 1)^num_taps scaled to
// unit energy and causal same-length filtering.
ComplexFrame random_convolve(const ComplexFrame& frame, RngStream& rng, int num_taps, double alpha);

// --- Label-mixing transforms -------------------------------------------------

struct LabelInfo {
  int class_index = 0;
  struct Secondary {
    int class_index = 0;
    // Mixup: share of total power held by the other signal.
    // Cutmix: fraction of the frame taken from the other signal.
    double weight = 0.0;
    friend bool operator==(const Secondary&, const Secondary&) = default;
  };
  std::optional<Secondary> secondary;
  friend bool operator==(const LabelInfo&, const LabelInfo&) = default;
};

struct Labeled {
  ComplexFrame frame;
  LabelInfo label;
};

// x + 10^(-alpha_db / 20) * other. Infinite alpha_db returns the input.
Labeled mixup(const Labeled& base, const Labeled& other, double alpha_db);
// Region of round(alpha_frac * len) samples at a random start replaced by
// the other frame's samples at the same positions.
Labeled cutmix(const Labeled& base, const Labeled& other, double alpha_frac, RngStream& rng);

// --- Feature representations -------------------------------------------------

enum class Representation : std::uint8_t {
  kIq2Channel,    // [2, len]
  kInterleaved,   // [2 len]
  kMagnitude,     // [len]
  kWrappedPhase,  // [len], (-pi, pi]
  kDft,           // [2, len]
  kSpectrogram,   // [nfft, T] dB, Hann, nfft 256, hop 128
};
inline constexpr std::size_t kFeatureSpectrogramNfft = 256;
inline constexpr std::size_t kFeatureSpectrogramHop = 128;

std::string_view to_string(Representation repr) noexcept;
std::optional<Representation> parse_representation(std::string_view text) noexcept;

struct FeatureTensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;  // row-major
};
FeatureTensor to_features(const ComplexFrame& frame, Representation repr);

// --- Declarative specs -------------------------------------------------------

enum class AugmentKind : std::uint8_t {
  kIdentity,
  kTimeReversal,
  kSpectralInversion,
  kChannelSwap,
  kAmplitudeReversal,
  kDropSamples,
  kQuantize,
  kMagnitudeRescale,
  kCutout,
  kPatchShuffle,
  kRandAugment,
  kSignalRolloff,
  kLoDrift,
  kTimeVaryingNoise,
  kClip,
  kAddSlope,
  kRandomConvolve,
  kGainDrift,
  kAgc,
  kMixup,
  kCutmix,
  kNormalize,
};

std::string_view to_string(AugmentKind kind) noexcept;
std::optional<AugmentKind> parse_augment_kind(std::string_view text) noexcept;

// Closed range a parameter is drawn from; lo == hi fixes it. Integer-valued
// parameters draw integers; enum parameters (fill, rounding, side) hold the
// enumerator index.
struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const ParamRange&, const ParamRange&) = default;
};
using ParamMap = std::map<std::string, ParamRange, std::less<>>;

// Parameter ranges used whenever a spec leaves a parameter out.
//
//   time_reversal       undo_inversion 1
//   drop_samples        drop_rate [0.01, 0.05], region_len [1, 16], fill any
//   quantize            num_levels [8, 64], rounding any
//   magnitude_rescale   start_frac [0, 1], scale [0.5, 3]
//   cutout              duration [0.05, 0.2], fill any
//   patch_shuffle       patch_len [3, 10], shuffle_ratio [0.01, 0.05]
//   rand_augment        n 2
//   signal_rolloff      side any, edge_frac [0.02, 0.15]
//   lo_drift            drift_rate [1e-6, 1e-5], max_drift [0.005, 0.02]
//   time_varying_noise  snr_low [10, 20], snr_high [20, 40], inflections [0, 5]
//   clip                percentage [0.75, 0.95]
//   random_convolve     num_taps [2, 5], alpha [0.1, 0.5]
//   gain_drift          drift_rate [1e-4, 1e-3], max_drift [0.05, 0.3]
//   agc                 AgcParams defaults
//   mixup               alpha_db [3, 23]
//   cutmix              alpha_frac [0.1, 0.5]
const ParamMap& default_params(AugmentKind kind);

// Enum parameter names and their accepted spellings, in enumerator order.
std::span<const std::string_view> enum_param_values(AugmentKind kind, std::string_view param) noexcept;

struct AugmentSpec {
  AugmentKind kind = AugmentKind::kIdentity;
  double probability = 1.0;
  ParamMap params;  // overrides default_params(kind)
  friend bool operator==(const AugmentSpec&, const AugmentSpec&) = default;
};

// Supplies the second example for mixup and cutmix.
using SecondarySource = std::function<Labeled(RngStream&)>;

// Applies one spec unconditionally (the probability gate is the caller's).
// Throws InvalidArgument when mixup/cutmix run without a source.
Labeled apply_augment(const AugmentSpec& spec, const Labeled& input, RngStream& rng,
                      const SecondarySource* source = nullptr);

// The nine RandAugment kinds: spectral inversion, channel swap, amplitude
// reversal, cutout, drop samples, quantize, magnitude rescale, patch
// shuffle and identity.
std::span<const AugmentKind> rand_augment_kinds() noexcept;
inline constexpr int kRandAugmentN = 2;

// Applies n kinds drawn uniformly with replacement from `kinds`, each with
// parameters drawn from default_params.
ComplexFrame rand_augment(const ComplexFrame& frame, RngStream& rng,
                          std::span<const AugmentKind> kinds, int n = kRandAugmentN);

}  // namespace sigforge::aug

#endif  // SIGFORGE_AUGMENTATIONS_HPP_
