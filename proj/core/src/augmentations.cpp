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

#include "sigforge/augmentations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "sigforge/dsp.hpp"
#include "sigforge/error.hpp"
#include "sigforge/fft.hpp"
#include "sigforge/measurement.hpp"

namespace sigforge::aug {
namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_component(const ComplexFrame& frame) {
  double m = 0.0;
  for (const Sample& s : frame) m = std::max({m, std::abs(s.real()), std::abs(s.imag())});
  return m;
}

Sample frame_mean(const ComplexFrame& frame) {
  Sample acc{};
  for (const Sample& s : frame) acc += s;
  return frame.empty() ? acc : acc / static_cast<double>(frame.size());
}

std::size_t draw_index(RngStream& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(std::string(what) + " must be in [0, 1]");
}

}  // namespace

ComplexFrame time_reversal(const ComplexFrame& frame, bool undo_inversion) {
  std::vector<Sample> out(frame.vector().rbegin(), frame.vector().rend());
  if (undo_inversion) {
    for (Sample& s : out) s = std::conj(s);
  }
  return ComplexFrame(std::move(out));
}

ComplexFrame spectral_inversion(const ComplexFrame& frame) {
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) out[n] = std::conj(frame[n]);
  return out;
}

ComplexFrame channel_swap(const ComplexFrame& frame) {
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) out[n] = {frame[n].imag(), frame[n].real()};
  return out;
}

ComplexFrame amplitude_reversal(const ComplexFrame& frame) {
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) out[n] = frame[n] * -1.0;
  return out;
}

ComplexFrame fill_regions(const ComplexFrame& frame, std::span<const Region> regions, DropFill fill) {
  const std::size_t len = frame.size();
  std::vector<bool> dropped(len, false);
  for (const Region& r : regions) {
    if (r.start > len || r.length > len - r.start) throw InvalidArgument("fill_regions: region outside frame");
    std::fill_n(dropped.begin() + static_cast<std::ptrdiff_t>(r.start), r.length, true);
  }
  const Sample mean = frame_mean(frame);
  ComplexFrame out = frame;
  for (const Region& r : regions) {
    if (r.length == 0) continue;
    std::optional<Sample> before;
    std::optional<Sample> after;
    for (std::size_t i = r.start; i-- > 0;) {
      if (!dropped[i]) {
        before = frame[i];
        break;
      }
    }
    for (std::size_t i = r.start + r.length; i < len; ++i) {
      if (!dropped[i]) {
        after = frame[i];
        break;
      }
    }
    Sample value{};
    switch (fill) {
      case DropFill::kFront: value = before.value_or(after.value_or(Sample{})); break;
      case DropFill::kBack: value = after.value_or(before.value_or(Sample{})); break;
      case DropFill::kMean: value = mean; break;
      case DropFill::kZero: value = Sample{}; break;
    }
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(r.start), r.length, value);
  }
  return out;
}

ComplexFrame quantize(const ComplexFrame& frame, int num_levels, Rounding rounding,
                      std::optional<double> full_scale) {
  if (num_levels < 1) throw InvalidArgument("quantize: num_levels must be >= 1");
  const double m = full_scale.value_or(max_abs_component(frame));
  if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidArgument("quantize: full scale must be finite and >= 0");
  if (m == 0.0) return frame;
  const double width = 2.0 * m / num_levels;
  const double offset = rounding == Rounding::kFloor ? 0.0 : rounding == Rounding::kMiddle ? 0.5 : 1.0;
  const auto q = [&](double v) {
    const double idx = std::clamp(std::floor((v + m) / width), 0.0, static_cast<double>(num_levels - 1));
    return -m + (idx + offset) * width;
  };
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) out[n] = {q(frame[n].real()), q(frame[n].imag())};
  return out;
}

ComplexFrame magnitude_rescale(const ComplexFrame& frame, std::size_t start, double factor) {
  if (start > frame.size()) throw InvalidArgument("magnitude_rescale: start beyond frame");
  ComplexFrame out = frame;
  if (factor == 1.0) return out;
  for (std::size_t n = start; n < frame.size(); ++n) out[n] *= factor;
  return out;
}

ComplexFrame signal_rolloff(const ComplexFrame& frame, Band side, double edge_frac) {
  if (!(edge_frac >= 0.0 && edge_frac <= 0.5)) throw InvalidArgument("signal_rolloff: edge_frac must be in [0, 0.5]");
  if (edge_frac == 0.0 || frame.empty()) return frame;
  std::vector<Sample> spectrum = dsp::fft(frame.samples());
  const std::size_t n = spectrum.size();
  const double inner = 0.5 - edge_frac;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = dsp::bin_frequency(k, n);
    const bool in_side = side == Band::kBoth || (side == Band::kUpper && f > 0.0) ||
                         (side == Band::kLower && f < 0.0);
    const double a = std::abs(f);
    if (!in_side || a <= inner) continue;
    spectrum[k] *= 0.5 * (1.0 + std::cos(kPi * (a - inner) / edge_frac));
  }
  return ComplexFrame(dsp::ifft(spectrum));
}

ComplexFrame clip(const ComplexFrame& frame, double percentage) {
  if (!(percentage > 0.0 && percentage <= 1.0)) throw InvalidArgument("clip: percentage must be in (0, 1]");
  const double bound = percentage * max_abs_component(frame);
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) {
    out[n] = {std::clamp(frame[n].real(), -bound, bound), std::clamp(frame[n].imag(), -bound, bound)};
  }
  return out;
}

ComplexFrame add_slope(const ComplexFrame& frame) {
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) {
    out[n] = n == 0 ? frame[0] : frame[n] + (frame[n] - frame[n - 1]);
  }
  return out;
}

ComplexFrame agc(const ComplexFrame& frame, const AgcParams& p, std::vector<double>* gain_trace) {
  constexpr double kZeroLevel = -200.0;
  ComplexFrame out(frame.size());
  if (gain_trace != nullptr) gain_trace->assign(frame.size(), 0.0);
  double gain = p.initial_gain;
  double level = 0.0;
  for (std::size_t n = 0; n < frame.size(); ++n) {
    const double mag = std::abs(frame[n]);
    const double instant = mag > 0.0 ? std::log(mag) : kZeroLevel;
    level = n == 0 ? instant : p.level_alpha * level + (1.0 - p.level_alpha) * instant;
    const double error = p.reference_level - (level + gain);
    double alpha = p.track_alpha;
    if (level <= p.low_level) {
      alpha = 0.0;
    } else if (level > p.high_level) {
      alpha = p.overflow_alpha;
    } else if (std::abs(error) > p.track_range) {
      alpha = p.acquire_alpha;
    }
    gain += alpha * error;
    out[n] = frame[n] * std::exp(gain);
    if (gain_trace != nullptr) (*gain_trace)[n] = gain;
  }
  return out;
}

std::vector<Region> draw_drop_regions(std::size_t length, RngStream& rng, double drop_rate,
                                      std::size_t min_region, std::size_t max_region) {
  require_unit_interval(drop_rate, "drop_rate");
  if (min_region < 1 || min_region > max_region) throw InvalidArgument("drop_samples: bad region length range");
  const auto target = static_cast<std::size_t>(std::lround(drop_rate * static_cast<double>(length)));
  std::vector<std::size_t> lengths;
  std::size_t total = 0;
  while (total < target) {
    const std::size_t l = std::min(draw_index(rng, min_region, max_region), length - total);
    lengths.push_back(l);
    total += l;
  }
  // Spread the free samples into gaps before each region.
  const std::size_t free = length - total;
  std::vector<std::size_t> cuts(lengths.size());
  for (auto& c : cuts) c = draw_index(rng, 0, free);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Region> regions(lengths.size());
  std::size_t consumed = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    regions[i] = {cuts[i] + consumed, lengths[i]};
    consumed += lengths[i];
  }
  return regions;
}

ComplexFrame drop_samples(const ComplexFrame& frame, RngStream& rng, double drop_rate,
                          std::size_t min_region, std::size_t max_region, DropFill fill) {
  const std::vector<Region> regions = draw_drop_regions(frame.size(), rng, drop_rate, min_region, max_region);
  if (regions.empty()) return frame;
  return fill_regions(frame, regions, fill);
}

ComplexFrame cutout(const ComplexFrame& frame, RngStream& rng, double duration_frac, CutoutFill fill) {
  require_unit_interval(duration_frac, "cutout duration");
  const std::size_t len = frame.size();
  const auto count = static_cast<std::size_t>(std::lround(duration_frac * static_cast<double>(len)));
  if (count == 0) return frame;
  const std::size_t start = draw_index(rng, 0, len - count);
  double noise_power = 0.0;
  switch (fill) {
    case CutoutFill::kLowNoise: noise_power = kCutoutLowNoise; break;
    case CutoutFill::kAvgNoise: noise_power = kCutoutAvgNoise; break;
    case CutoutFill::kHighNoise: noise_power = kCutoutHighNoise; break;
    default: break;
  }
  const double sigma = std::sqrt(noise_power * mean_power(frame));
  ComplexFrame out = frame;
  for (std::size_t n = start; n < start + count; ++n) {
    switch (fill) {
      case CutoutFill::kZeros: out[n] = Sample{}; break;
      case CutoutFill::kOnes: out[n] = Sample{1.0, 0.0}; break;
      default: out[n] = sigma * rng.complex_normal(); break;
    }
  }
  return out;
}

ComplexFrame patch_shuffle(const ComplexFrame& frame, RngStream& rng, std::size_t min_patch,
                           std::size_t max_patch, double shuffle_ratio) {
  require_unit_interval(shuffle_ratio, "shuffle_ratio");
  if (min_patch < 1 || min_patch > max_patch) throw InvalidArgument("patch_shuffle: bad patch length range");
  ComplexFrame out = frame;
  std::size_t pos = 0;
  while (pos < out.size()) {
    const std::size_t plen = std::min(draw_index(rng, min_patch, max_patch), out.size() - pos);
    if (rng.bernoulli(shuffle_ratio)) {
      for (std::size_t i = plen - 1; i > 0; --i) {
        std::swap(out[pos + i], out[pos + draw_index(rng, 0, i)]);
      }
    }
    pos += plen;
  }
  return out;
}

std::vector<double> bounded_walk(std::size_t length, RngStream& rng, double drift_rate, double max_drift) {
  if (!(drift_rate >= 0.0) || !(max_drift >= 0.0)) throw InvalidArgument("drift parameters must be >= 0");
  std::vector<double> walk(length, 0.0);
  double v = 0.0;
  for (std::size_t n = 1; n < length; ++n) {
    v += rng.uniform(-drift_rate, drift_rate);
    if (std::abs(v) > max_drift) v = 0.0;
    walk[n] = v;
  }
  return walk;
}

ComplexFrame lo_drift(const ComplexFrame& frame, RngStream& rng, double drift_rate, double max_drift) {
  const std::vector<double> f = bounded_walk(frame.size(), rng, drift_rate, max_drift);
  if (drift_rate == 0.0) return frame;
  ComplexFrame out(frame.size());
  double theta = 0.0;
  for (std::size_t n = 0; n < frame.size(); ++n) {
    theta = std::remainder(theta + 2.0 * kPi * f[n], 2.0 * kPi);
    out[n] = frame[n] * Sample{std::cos(theta), std::sin(theta)};
  }
  return out;
}

ComplexFrame gain_drift(const ComplexFrame& frame, RngStream& rng, double drift_rate, double max_drift) {
  if (max_drift >= 1.0) throw InvalidArgument("gain_drift: max_drift must be below 1");
  const std::vector<double> d = bounded_walk(frame.size(), rng, drift_rate, max_drift);
  if (drift_rate == 0.0) return frame;
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) out[n] = frame[n] * (1.0 + d[n]);
  return out;
}

std::vector<double> snr_trajectory(std::size_t length, RngStream& rng, double snr_low_db,
                                   double snr_high_db, int inflections) {
  if (inflections < 0) throw InvalidArgument("time_varying_noise: inflections must be >= 0");
  if (snr_low_db > snr_high_db) throw InvalidArgument("time_varying_noise: snr_low above snr_high");
  if (length == 0) return {};
  std::vector<std::size_t> knots{0};
  if (length > 2) {
    std::vector<std::size_t> inner(static_cast<std::size_t>(inflections));
    for (auto& k : inner) k = draw_index(rng, 1, length - 2);
    std::sort(inner.begin(), inner.end());
    knots.insert(knots.end(), inner.begin(), inner.end());
  }
  knots.push_back(length - 1);
  const bool start_low = rng.bernoulli(0.5);
  std::vector<double> snr(length, snr_low_db);
  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    const bool rising = (s % 2 == 0) == start_low;
    const double from = rising ? snr_low_db : snr_high_db;
    const double to = rising ? snr_high_db : snr_low_db;
    const std::size_t a = knots[s];
    const std::size_t b = knots[s + 1];
    for (std::size_t n = a; n <= b; ++n) {
      const double t = b == a ? 1.0 : static_cast<double>(n - a) / static_cast<double>(b - a);
      snr[n] = from + (to - from) * t;
    }
  }
  return snr;
}

ComplexFrame time_varying_noise(const ComplexFrame& frame, RngStream& rng, double snr_low_db,
                                double snr_high_db, int inflections) {
  const std::vector<double> snr = snr_trajectory(frame.size(), rng, snr_low_db, snr_high_db, inflections);
  const double power = mean_power(frame);
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) {
    const double sigma = std::sqrt(power * std::pow(10.0, -snr[n] / 10.0));
    out[n] = frame[n] + sigma * rng.complex_normal();
  }
  return out;
}

ComplexFrame random_convolve(const ComplexFrame& frame, RngStream& rng, int num_taps, double alpha) {
  if (num_taps < 1) throw InvalidArgument("random_convolve: num_taps must be >= 1");
  require_unit_interval(alpha, "random_convolve alpha");
  std::vector<double> taps(static_cast<std::size_t>(num_taps));
  double energy = 0.0;
  for (double& t : taps) {
    t = rng.uniform();
    energy += t * t;
  }
  if (alpha == 0.0) return frame;
  if (energy == 0.0) taps.assign(taps.size(), 1.0), energy = static_cast<double>(taps.size());
  for (double& t : taps) t /= std::sqrt(energy);
  const ComplexFrame filtered = dsp::filter_causal(frame, taps);
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) out[n] = alpha * filtered[n] + (1.0 - alpha) * frame[n];
  return out;
}

Labeled mixup(const Labeled& base, const Labeled& other, double alpha_db) {
  if (std::isnan(alpha_db)) throw InvalidArgument("mixup: alpha_db is NaN");
  if (std::isinf(alpha_db) && alpha_db > 0.0) return base;
  if (other.frame.size() != base.frame.size()) throw InvalidArgument("mixup: frame lengths differ");
  const double g = std::pow(10.0, -alpha_db / 20.0);
  Labeled out;
  out.frame = ComplexFrame(base.frame.size());
  for (std::size_t n = 0; n < base.frame.size(); ++n) out.frame[n] = base.frame[n] + g * other.frame[n];
  const double px = mean_power(base.frame);
  const double po = g * g * mean_power(other.frame);
  out.label.class_index = base.label.class_index;
  out.label.secondary = LabelInfo::Secondary{other.label.class_index, px + po > 0.0 ? po / (px + po) : 0.0};
  return out;
}

Labeled cutmix(const Labeled& base, const Labeled& other, double alpha_frac, RngStream& rng) {
  require_unit_interval(alpha_frac, "cutmix alpha_frac");
  const std::size_t len = base.frame.size();
  if (other.frame.size() != len) throw InvalidArgument("cutmix: frame lengths differ");
  const auto count = static_cast<std::size_t>(std::lround(alpha_frac * static_cast<double>(len)));
  if (count == 0) return base;
  if (count == len) return other;
  const std::size_t start = draw_index(rng, 0, len - count);
  Labeled out = base;
  std::copy_n(other.frame.begin() + static_cast<std::ptrdiff_t>(start), count,
              out.frame.begin() + static_cast<std::ptrdiff_t>(start));
  out.label.secondary =
      LabelInfo::Secondary{other.label.class_index, static_cast<double>(count) / static_cast<double>(len)};
  return out;
}

namespace {
constexpr std::array<std::string_view, 6> kRepresentationNames{
    "iq_2channel", "interleaved", "magnitude", "wrapped_phase", "dft", "spectrogram"};
}  // namespace

std::string_view to_string(Representation repr) noexcept {
  return kRepresentationNames[static_cast<std::size_t>(repr)];
}

std::optional<Representation> parse_representation(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kRepresentationNames.size(); ++i) {
    if (kRepresentationNames[i] == text) return static_cast<Representation>(i);
  }
  return std::nullopt;
}

FeatureTensor to_features(const ComplexFrame& frame, Representation repr) {
  const std::size_t len = frame.size();
  FeatureTensor t;
  switch (repr) {
    case Representation::kIq2Channel:
    case Representation::kDft: {
      const std::vector<Sample> src =
          repr == Representation::kDft ? dsp::fft(frame.samples()) : frame.vector();
      t.shape = {2, len};
      t.data.resize(2 * len);
      for (std::size_t n = 0; n < len; ++n) {
        t.data[n] = src[n].real();
        t.data[len + n] = src[n].imag();
      }
      break;
    }
    case Representation::kInterleaved:
      t.shape = {2 * len};
      t.data.resize(2 * len);
      for (std::size_t n = 0; n < len; ++n) {
        t.data[2 * n] = frame[n].real();
        t.data[2 * n + 1] = frame[n].imag();
      }
      break;
    case Representation::kMagnitude:
      t.shape = {len};
      for (const Sample& s : frame) t.data.push_back(std::abs(s));
      break;
    case Representation::kWrappedPhase:
      t.shape = {len};
      for (const Sample& s : frame) {
        const double a = std::arg(s);
        t.data.push_back(a == -kPi ? kPi : a);
      }
      break;
    case Representation::kSpectrogram: {
      measure::Spectrogram spec = measure::spectrogram(frame, kFeatureSpectrogramNfft, kFeatureSpectrogramHop);
      t.shape = {spec.num_freqs, spec.num_times};
      t.data = std::move(spec.db);
      break;
    }
  }
  return t;
}

namespace {

struct KindName {
  AugmentKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 22> kKindNames{{
    {AugmentKind::kIdentity, "identity"},
    {AugmentKind::kTimeReversal, "time_reversal"},
    {AugmentKind::kSpectralInversion, "spectral_inversion"},
    {AugmentKind::kChannelSwap, "channel_swap"},
    {AugmentKind::kAmplitudeReversal, "amplitude_reversal"},
    {AugmentKind::kDropSamples, "drop_samples"},
    {AugmentKind::kQuantize, "quantize"},
    {AugmentKind::kMagnitudeRescale, "magnitude_rescale"},
    {AugmentKind::kCutout, "cutout"},
    {AugmentKind::kPatchShuffle, "patch_shuffle"},
    {AugmentKind::kRandAugment, "rand_augment"},
    {AugmentKind::kSignalRolloff, "signal_rolloff"},
    {AugmentKind::kLoDrift, "lo_drift"},
    {AugmentKind::kTimeVaryingNoise, "time_varying_noise"},
    {AugmentKind::kClip, "clip"},
    {AugmentKind::kAddSlope, "add_slope"},
    {AugmentKind::kRandomConvolve, "random_convolve"},
    {AugmentKind::kGainDrift, "gain_drift"},
    {AugmentKind::kAgc, "agc"},
    {AugmentKind::kMixup, "mixup"},
    {AugmentKind::kCutmix, "cutmix"},
    {AugmentKind::kNormalize, "normalize"},
}};

constexpr std::array<std::string_view, 4> kDropFillNames{"front", "back", "mean", "zero"};
constexpr std::array<std::string_view, 5> kCutoutFillNames{"zeros", "ones", "low_noise", "avg_noise",
                                                           "high_noise"};
constexpr std::array<std::string_view, 3> kRoundingNames{"floor", "middle", "ceiling"};
constexpr std::array<std::string_view, 3> kBandNames{"lower", "upper", "both"};

constexpr std::array<AugmentKind, 9> kRandAugmentKinds{
    AugmentKind::kSpectralInversion, AugmentKind::kChannelSwap, AugmentKind::kAmplitudeReversal,
    AugmentKind::kCutout,            AugmentKind::kDropSamples, AugmentKind::kQuantize,
    AugmentKind::kMagnitudeRescale,  AugmentKind::kPatchShuffle, AugmentKind::kIdentity};

bool is_integer_param(std::string_view name) {
  return name == "num_levels" || name == "inflections" || name == "num_taps" || name == "n" ||
         name == "rounding" || name == "fill" || name == "side" || name == "undo_inversion";
}

ParamMap agc_defaults() {
  const AgcParams d;
  return {{"initial_gain", {d.initial_gain, d.initial_gain}},
          {"level_alpha", {d.level_alpha, d.level_alpha}},
          {"track_alpha", {d.track_alpha, d.track_alpha}},
          {"overflow_alpha", {d.overflow_alpha, d.overflow_alpha}},
          {"acquire_alpha", {d.acquire_alpha, d.acquire_alpha}},
          {"reference_level", {d.reference_level, d.reference_level}},
          {"track_range", {d.track_range, d.track_range}},
          {"low_level", {d.low_level, d.low_level}},
          {"high_level", {d.high_level, d.high_level}}};
}

class Params {
 public:
  Params(const AugmentSpec& spec, RngStream& rng) : defaults_(default_params(spec.kind)), spec_(spec), rng_(rng) {}

  ParamRange range(std::string_view name) const {
    if (auto it = spec_.params.find(name); it != spec_.params.end()) return it->second;
    if (auto it = defaults_.find(name); it != defaults_.end()) return it->second;
    throw InvalidArgument(std::string(to_string(spec_.kind)) + ": no value for parameter " + std::string(name));
  }

  double draw(std::string_view name) {
    const ParamRange r = range(name);
    if (!(r.lo <= r.hi)) throw InvalidArgument("parameter " + std::string(name) + " has an empty range");
    if (r.lo == r.hi) return r.lo;
    if (is_integer_param(name)) {
      return static_cast<double>(rng_.uniform_int(std::llround(r.lo), std::llround(r.hi)));
    }
    return rng_.uniform(r.lo, r.hi);
  }

  int draw_int(std::string_view name) { return static_cast<int>(std::llround(draw(name))); }

  template <typename Enum, std::size_t N>
  Enum draw_enum(std::string_view name, const std::array<std::string_view, N>&) {
    const int v = draw_int(name);
    if (v < 0 || static_cast<std::size_t>(v) >= N) throw InvalidArgument("parameter " + std::string(name) + " out of range");
    return static_cast<Enum>(v);
  }

  std::pair<std::size_t, std::size_t> length_range(std::string_view name) const {
    const ParamRange r = range(name);
    if (!(r.lo >= 1.0 && r.lo <= r.hi)) throw InvalidArgument("parameter " + std::string(name) + " must be a range >= 1");
    return {static_cast<std::size_t>(std::llround(r.lo)), static_cast<std::size_t>(std::llround(r.hi))};
  }

 private:
  const ParamMap& defaults_;
  const AugmentSpec& spec_;
  RngStream& rng_;
};

}  // namespace

std::string_view to_string(AugmentKind kind) noexcept {
  for (const KindName& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

std::optional<AugmentKind> parse_augment_kind(std::string_view text) noexcept {
  for (const KindName& k : kKindNames) {
    if (k.name == text) return k.kind;
  }
  return std::nullopt;
}

const ParamMap& default_params(AugmentKind kind) {
  static const std::map<AugmentKind, ParamMap> table = {
      {AugmentKind::kIdentity, {}},
      {AugmentKind::kTimeReversal, {{"undo_inversion", {1, 1}}}},
      {AugmentKind::kSpectralInversion, {}},
      {AugmentKind::kChannelSwap, {}},
      {AugmentKind::kAmplitudeReversal, {}},
      {AugmentKind::kDropSamples, {{"drop_rate", {0.01, 0.05}}, {"region_len", {1, 16}}, {"fill", {0, 3}}}},
      {AugmentKind::kQuantize, {{"num_levels", {8, 64}}, {"rounding", {0, 2}}}},
      {AugmentKind::kMagnitudeRescale, {{"start_frac", {0.0, 1.0}}, {"scale", {0.5, 3.0}}}},
      {AugmentKind::kCutout, {{"duration", {0.05, 0.2}}, {"fill", {0, 4}}}},
      {AugmentKind::kPatchShuffle, {{"patch_len", {3, 10}}, {"shuffle_ratio", {0.01, 0.05}}}},
      {AugmentKind::kRandAugment, {{"n", {kRandAugmentN, kRandAugmentN}}}},
      {AugmentKind::kSignalRolloff, {{"side", {0, 2}}, {"edge_frac", {0.02, 0.15}}}},
      {AugmentKind::kLoDrift, {{"drift_rate", {1e-6, 1e-5}}, {"max_drift", {0.005, 0.02}}}},
      {AugmentKind::kTimeVaryingNoise,
       {{"snr_low", {10.0, 20.0}}, {"snr_high", {20.0, 40.0}}, {"inflections", {0, 5}}}},
      {AugmentKind::kClip, {{"percentage", {0.75, 0.95}}}},
      {AugmentKind::kAddSlope, {}},
      {AugmentKind::kRandomConvolve, {{"num_taps", {2, 5}}, {"alpha", {0.1, 0.5}}}},
      {AugmentKind::kGainDrift, {{"drift_rate", {1e-4, 1e-3}}, {"max_drift", {0.05, 0.3}}}},
      {AugmentKind::kAgc, agc_defaults()},
      {AugmentKind::kMixup, {{"alpha_db", {3.0, 23.0}}}},
      {AugmentKind::kCutmix, {{"alpha_frac", {0.1, 0.5}}}},
      {AugmentKind::kNormalize, {}},
  };
  return table.at(kind);
}

std::span<const std::string_view> enum_param_values(AugmentKind kind, std::string_view param) noexcept {
  if (param == "fill" && kind == AugmentKind::kDropSamples) return kDropFillNames;
  if (param == "fill" && kind == AugmentKind::kCutout) return kCutoutFillNames;
  if (param == "rounding" && kind == AugmentKind::kQuantize) return kRoundingNames;
  if (param == "side" && kind == AugmentKind::kSignalRolloff) return kBandNames;
  return {};
}

std::span<const AugmentKind> rand_augment_kinds() noexcept { return kRandAugmentKinds; }

Labeled apply_augment(const AugmentSpec& spec, const Labeled& input, RngStream& rng,
                      const SecondarySource* source) {
  Params p(spec, rng);
  Labeled out;
  out.label = input.label;
  const ComplexFrame& x = input.frame;
  switch (spec.kind) {
    case AugmentKind::kIdentity: out.frame = x; break;
    case AugmentKind::kTimeReversal: out.frame = time_reversal(x, p.draw_int("undo_inversion") != 0); break;
    case AugmentKind::kSpectralInversion: out.frame = spectral_inversion(x); break;
    case AugmentKind::kChannelSwap: out.frame = channel_swap(x); break;
    case AugmentKind::kAmplitudeReversal: out.frame = amplitude_reversal(x); break;
    case AugmentKind::kDropSamples: {
      const double rate = p.draw("drop_rate");
      const auto [lo, hi] = p.length_range("region_len");
      const auto fill = p.draw_enum<DropFill>("fill", kDropFillNames);
      out.frame = drop_samples(x, rng, rate, lo, hi, fill);
      break;
    }
    case AugmentKind::kQuantize: {
      const int levels = p.draw_int("num_levels");
      out.frame = quantize(x, levels, p.draw_enum<Rounding>("rounding", kRoundingNames));
      break;
    }
    case AugmentKind::kMagnitudeRescale: {
      const double frac = std::clamp(p.draw("start_frac"), 0.0, 1.0);
      const auto start = std::min(x.size(), static_cast<std::size_t>(frac * static_cast<double>(x.size())));
      out.frame = magnitude_rescale(x, start, p.draw("scale"));
      break;
    }
    case AugmentKind::kCutout: {
      const double duration = p.draw("duration");
      out.frame = cutout(x, rng, duration, p.draw_enum<CutoutFill>("fill", kCutoutFillNames));
      break;
    }
    case AugmentKind::kPatchShuffle: {
      const auto [lo, hi] = p.length_range("patch_len");
      out.frame = patch_shuffle(x, rng, lo, hi, p.draw("shuffle_ratio"));
      break;
    }
    case AugmentKind::kRandAugment: out.frame = rand_augment(x, rng, kRandAugmentKinds, p.draw_int("n")); break;
    case AugmentKind::kSignalRolloff: {
      const auto side = p.draw_enum<Band>("side", kBandNames);
      out.frame = signal_rolloff(x, side, p.draw("edge_frac"));
      break;
    }
    case AugmentKind::kLoDrift: {
      const double rate = p.draw("drift_rate");
      out.frame = lo_drift(x, rng, rate, p.draw("max_drift"));
      break;
    }
    case AugmentKind::kTimeVaryingNoise: {
      const double lo = p.draw("snr_low");
      const double hi = p.draw("snr_high");
      out.frame = time_varying_noise(x, rng, std::min(lo, hi), std::max(lo, hi), p.draw_int("inflections"));
      break;
    }
    case AugmentKind::kClip: out.frame = clip(x, p.draw("percentage")); break;
    case AugmentKind::kAddSlope: out.frame = add_slope(x); break;
    case AugmentKind::kRandomConvolve: {
      const int taps = p.draw_int("num_taps");
      out.frame = random_convolve(x, rng, taps, p.draw("alpha"));
      break;
    }
    case AugmentKind::kGainDrift: {
      const double rate = p.draw("drift_rate");
      out.frame = gain_drift(x, rng, rate, p.draw("max_drift"));
      break;
    }
    case AugmentKind::kAgc: {
      AgcParams a;
      a.initial_gain = p.draw("initial_gain");
      a.level_alpha = p.draw("level_alpha");
      a.track_alpha = p.draw("track_alpha");
      a.overflow_alpha = p.draw("overflow_alpha");
      a.acquire_alpha = p.draw("acquire_alpha");
      a.reference_level = p.draw("reference_level");
      a.track_range = p.draw("track_range");
      a.low_level = p.draw("low_level");
      a.high_level = p.draw("high_level");
      out.frame = agc(x, a);
      break;
    }
    case AugmentKind::kMixup:
    case AugmentKind::kCutmix: {
      if (source == nullptr || !*source) {
        throw InvalidArgument(std::string(to_string(spec.kind)) + " needs a secondary source");
      }
      const Labeled other = (*source)(rng);
      if (spec.kind == AugmentKind::kMixup) return mixup(input, other, p.draw("alpha_db"));
      const double frac = p.draw("alpha_frac");
      return cutmix(input, other, frac, rng);
    }
    case AugmentKind::kNormalize:
      out.frame = mean_power(x) > 0.0 ? normalize_unit_power(x) : x;
      break;
  }
  return out;
}

ComplexFrame rand_augment(const ComplexFrame& frame, RngStream& rng, std::span<const AugmentKind> kinds, int n) {
  if (n < 0) throw InvalidArgument("rand_augment: n must be >= 0");
  if (n > 0 && kinds.empty()) throw InvalidArgument("rand_augment: no kinds to choose from");
  Labeled cur{frame, {}};
  for (int i = 0; i < n; ++i) {
    const AugmentKind kind = kinds[draw_index(rng, 0, kinds.size() - 1)];
    if (kind == AugmentKind::kRandAugment || kind == AugmentKind::kMixup || kind == AugmentKind::kCutmix) {
      throw InvalidArgument("rand_augment: unsupported kind " + std::string(to_string(kind)));
    }
    cur = apply_augment(AugmentSpec{kind, 1.0, {}}, cur, rng);
  }
  return cur.frame;
}

}  // namespace sigforge::aug
