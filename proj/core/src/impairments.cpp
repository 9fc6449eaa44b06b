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

#include "sigforge/impairments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sigforge/dsp.hpp"
#include "sigforge/error.hpp"

namespace sigforge::impair {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kResampleZeroCrossings = 16;

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(name) + " must be in [0, 1]");
}

void check_range(double lo, double hi, const char* name) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw InvalidArgument(std::string(name) + " range is empty or NaN");
  }
}

ComplexFrame fit_length(const ComplexFrame& frame, std::size_t length) {
  ComplexFrame out(length);
  std::copy_n(frame.begin(), std::min(length, frame.size()), out.begin());
  return out;
}

ImpairmentStep make_step(ImpairmentKind kind) {
  ImpairmentStep step;
  step.kind = kind;
  return step;
}

// Shared by the chain and replay so both produce identical bits.
ComplexFrame apply_step(const ImpairmentStep& step, const ComplexFrame& x, ChainTrace* trace) {
  switch (step.kind) {
    case ImpairmentKind::kPhaseShift:
      return phase_shift(x, step.param("phi"));
    case ImpairmentKind::kTimeShift:
      return time_shift(x, static_cast<std::int64_t>(step.param("shift")));
    case ImpairmentKind::kFreqShift:
      return freq_shift(x, step.param("freq"));
    case ImpairmentKind::kRayleigh: {
      if (!step.seed) throw FormatError("rayleigh step has no seed");
      RngStream sub(*step.seed);
      return dsp::filter_causal(x, rayleigh_taps(static_cast<int>(step.param("num_taps")), sub));
    }
    case ImpairmentKind::kIqImbalance:
      return iq_imbalance(x, step.param("amp_db"), step.param("phase_rad"), step.param("dc"));
    case ImpairmentKind::kResample:
      return random_resample(x, step.param("rate"));
    case ImpairmentKind::kAwgn: {
      if (!step.seed) throw FormatError("awgn step has no seed");
      const double sps = step.param("sps");
      const ComplexFrame unit = mean_power(x) > 0.0 ? normalize_unit_power(x) : x;
      RngStream sub(*step.seed);
      ComplexFrame noise = awgn_noise(x.size(), noise_variance(step.param("esn0_db"), sps), sub);
      ComplexFrame out(x.size());
      for (std::size_t n = 0; n < x.size(); ++n) out[n] = unit[n] + noise[n];
      if (trace != nullptr) {
        trace->pre_noise = unit;
        trace->noise = std::move(noise);
        trace->samples_per_symbol = sps;
      }
      return out;
    }
    case ImpairmentKind::kRrcPulseShape:
    case ImpairmentKind::kGaussianPulseShape:
    case ImpairmentKind::kFskLowpassResample:
      return x;
  }
  return x;
}

}  // namespace

ImpairmentProfile ImpairmentProfile::none() {
  ImpairmentProfile p;
  p.phase_shift_prob = 0.0;
  p.time_shift_prob = 0.0;
  p.freq_shift_prob = 0.0;
  p.rayleigh_prob = 0.0;
  p.iq_imbalance_prob = 0.0;
  p.resample_prob = 0.0;
  p.esn0_min_db = std::numeric_limits<double>::infinity();
  p.esn0_max_db = std::numeric_limits<double>::infinity();
  p.random_pulse_shape = false;
  return p;
}

void ImpairmentProfile::validate() const {
  check_probability(phase_shift_prob, "phase_shift_prob");
  check_probability(time_shift_prob, "time_shift_prob");
  check_probability(freq_shift_prob, "freq_shift_prob");
  check_probability(rayleigh_prob, "rayleigh_prob");
  check_probability(iq_imbalance_prob, "iq_imbalance_prob");
  check_probability(resample_prob, "resample_prob");
  check_range(0.0, phase_shift_max, "phase_shift");
  check_range(0.0, time_shift_max, "time_shift");
  check_range(0.0, freq_shift_max, "freq_shift");
  if (freq_shift_max >= 0.5) throw InvalidArgument("freq_shift_max must be below 0.5");
  check_range(2.0, rayleigh_min_taps, "rayleigh taps");
  check_range(rayleigh_min_taps, rayleigh_max_taps, "rayleigh taps");
  check_range(rayleigh_max_taps, 20.0, "rayleigh taps");
  check_range(0.0, iq_amp_db_max, "iq_amp_db");
  check_range(0.0, iq_phase_max, "iq_phase");
  check_range(0.0, iq_dc_max, "iq_dc");
  check_range(0.0, resample_min, "resample");
  check_range(resample_min, resample_max, "resample");
  check_range(esn0_min_db, esn0_max_db, "esn0");
}

double noise_variance(double esn0_db, double samples_per_symbol) {
  if (!(samples_per_symbol > 0.0)) throw InvalidArgument("samples_per_symbol must be positive");
  return samples_per_symbol * std::pow(10.0, -esn0_db / 10.0);
}

ComplexFrame awgn_noise(std::size_t length, double variance, RngStream& rng) {
  ComplexFrame noise(length);
  for (Sample& s : noise) s = rng.complex_normal();
  if (length == 0 || variance == 0.0) return ComplexFrame(length);
  const double realized = mean_power(noise);
  return scale(noise, std::sqrt(variance / realized));
}

ComplexFrame add_awgn(const ComplexFrame& frame, double esn0_db, double samples_per_symbol,
                      RngStream& rng) {
  if (!(samples_per_symbol > 0.0)) throw InvalidArgument("samples_per_symbol must be positive");
  if (std::isinf(esn0_db) && esn0_db > 0.0) return frame;
  const ComplexFrame noise =
      awgn_noise(frame.size(), noise_variance(esn0_db, samples_per_symbol), rng);
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) out[n] = frame[n] + noise[n];
  return out;
}

double random_pulse_shape_linear(RngStream& rng) { return rng.uniform(kRrcAlphaMin, kRrcAlphaMax); }

double random_pulse_shape_gaussian(RngStream& rng) {
  return rng.uniform(kGaussianBtMin, kGaussianBtMax);
}

ComplexFrame fsk_lpf_resample(const ComplexFrame& frame, double cutoff, std::size_t length) {
  if (!(cutoff > 0.0 && cutoff < 0.5)) throw InvalidArgument("cutoff must be in (0, 0.5)");
  const std::vector<double> lp = dsp::windowed_sinc_lowpass(cutoff, kFskLowpassTaps);
  const ComplexFrame filtered = dsp::filter_same(frame, lp);
  return fit_length(resample(filtered, 4.0 * cutoff), length == 0 ? frame.size() : length);
}

std::pair<ComplexFrame, double> fsk_lpf_resample(const ComplexFrame& frame, RngStream& rng,
                                                 std::size_t length) {
  const double cutoff = rng.uniform(kFskCutoffMin, kFskCutoffMax);
  return {fsk_lpf_resample(frame, cutoff, length), cutoff};
}

ComplexFrame phase_shift(const ComplexFrame& frame, double phi) {
  if (!std::isfinite(phi)) throw InvalidArgument("phase must be finite");
  Sample rot{std::cos(phi), std::sin(phi)};
  if (phi == 0.0) rot = {1.0, 0.0};
  if (phi == kPi / 2) rot = {0.0, 1.0};
  if (phi == -kPi / 2) rot = {0.0, -1.0};
  if (phi == kPi || phi == -kPi) rot = {-1.0, 0.0};
  ComplexFrame out(frame.size());
  if (rot.imag() == 0.0) {
    for (std::size_t n = 0; n < frame.size(); ++n) out[n] = frame[n] * rot.real();
  } else if (rot.real() == 0.0) {
    const double s = rot.imag();
    for (std::size_t n = 0; n < frame.size(); ++n) out[n] = {-s * frame[n].imag(), s * frame[n].real()};
  } else {
    for (std::size_t n = 0; n < frame.size(); ++n) out[n] = frame[n] * rot;
  }
  return out;
}

ComplexFrame time_shift(const ComplexFrame& frame, std::int64_t shift) {
  const auto len = static_cast<std::int64_t>(frame.size());
  if (shift <= -len || shift >= len) throw InvalidArgument("time shift must be shorter than the frame");
  ComplexFrame out(frame.size());
  for (std::int64_t n = 0; n < len; ++n) {
    const std::int64_t src = n - shift;
    if (src >= 0 && src < len) out[static_cast<std::size_t>(n)] = frame[static_cast<std::size_t>(src)];
  }
  return out;
}

ComplexFrame freq_shift(const ComplexFrame& frame, double freq) {
  if (!(std::abs(freq) < 0.5)) throw InvalidArgument("frequency shift must be in (-0.5, 0.5)");
  if (freq == 0.0) return frame;
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) {
    const double cycles = std::fmod(freq * static_cast<double>(n), 1.0);
    const double angle = 2.0 * kPi * cycles;
    out[n] = frame[n] * Sample{std::cos(angle), std::sin(angle)};
  }
  return out;
}

std::vector<Sample> rayleigh_taps(int num_taps, RngStream& rng) {
  if (num_taps < 1) throw InvalidArgument("rayleigh_taps: need at least one tap");
  std::vector<double> profile(static_cast<std::size_t>(num_taps));
  for (int k = 0; k < num_taps; ++k) profile[static_cast<std::size_t>(k)] = 1.0 - static_cast<double>(k) / num_taps;
  const double total = std::accumulate(profile.begin(), profile.end(), 0.0);
  std::vector<Sample> taps(profile.size());
  for (std::size_t k = 0; k < taps.size(); ++k) {
    const auto [g1, g2] = rng.normal_pair();
    taps[k] = std::sqrt(profile[k] / total / 2.0) * Sample{g1, g2};
  }
  return taps;
}

ComplexFrame rayleigh_channel(const ComplexFrame& frame, int num_taps, RngStream& rng) {
  if (num_taps < 2 || num_taps > 20) throw InvalidArgument("rayleigh_channel: num_taps must be in 2..20");
  return dsp::filter_causal(frame, rayleigh_taps(num_taps, rng));
}

ComplexFrame iq_imbalance(const ComplexFrame& frame, double amp_db, double phase_rad, double dc_offset) {
  const double gi = std::pow(10.0, amp_db / 40.0);
  const double gq = std::pow(10.0, -amp_db / 40.0);
  const double c = std::cos(phase_rad / 2.0);
  const double s = std::sin(phase_rad / 2.0);
  ComplexFrame out(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) {
    const Sample xp{gi * frame[n].real(), gq * frame[n].imag()};
    const Sample y = c * xp + Sample{0.0, s} * std::conj(xp);
    out[n] = y + dc_offset;
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> rational_approximation(double value, std::int64_t max_denominator) {
  if (!(value > 0.0) || !std::isfinite(value)) throw InvalidArgument("rational_approximation: value must be positive");
  if (max_denominator < 1) throw InvalidArgument("rational_approximation: max_denominator must be >= 1");
  // Continued-fraction convergents, finished with the best semiconvergent.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = value;
  for (int iter = 0; iter < 64; ++iter) {
    const double af = std::floor(x);
    if (af > 1e15) break;
    const auto a = static_cast<std::int64_t>(af);
    const std::int64_t q2 = q0 + a * q1;
    if (q2 > max_denominator) {
      const std::int64_t k = (max_denominator - q0) / q1;
      const std::int64_t ps = p0 + k * p1;
      const std::int64_t qs = q0 + k * q1;
      const double err_semi = std::abs(value - static_cast<double>(ps) / static_cast<double>(qs));
      const double err_conv = std::abs(value - static_cast<double>(p1) / static_cast<double>(q1));
      if (err_semi < err_conv) return {ps, qs};
      return {p1, q1};
    }
    const std::int64_t p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - af;
    if (frac < 1e-12) break;
    x = 1.0 / frac;
  }
  return {p1, q1};
}

ComplexFrame resample(const ComplexFrame& frame, double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("resample: rate must be positive");
  if (rate == 1.0) return frame;
  const auto [p, q] = rational_approximation(rate);
  if (p == q) return frame;
  const std::int64_t m = std::max(p, q);
  const std::int64_t half = kResampleZeroCrossings * m;
  // Prototype filter at the upsampled rate, cutoff at the narrower Nyquist.
  std::vector<double> h = dsp::windowed_sinc_lowpass(0.5 / static_cast<double>(m),
                                                     static_cast<std::size_t>(2 * half + 1));
  for (double& t : h) t *= static_cast<double>(p);

  const auto len = static_cast<std::int64_t>(frame.size());
  const std::int64_t out_len = (len * p + q - 1) / q;
  ComplexFrame out(static_cast<std::size_t>(out_len));
  for (std::int64_t j = 0; j < out_len; ++j) {
    // Output j sits at upsampled position j*q; input k sits at k*p.
    const std::int64_t center = j * q;
    std::int64_t k_lo = (center - half + p - 1) / p;
    if (center - half < 0) k_lo = -((half - center) / p);
    k_lo = std::max<std::int64_t>(k_lo, 0);
    const std::int64_t k_hi = std::min<std::int64_t>((center + half) / p, len - 1);
    Sample acc{};
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      acc += frame[static_cast<std::size_t>(k)] * h[static_cast<std::size_t>(center - k * p + half)];
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

ComplexFrame random_resample(const ComplexFrame& frame, double rate) {
  if (rate == 1.0) return frame;
  return fit_length(resample(frame, rate), frame.size());
}

ShapedSource gen_impaired_source(int class_index, RngStream& rng, std::size_t length, bool randomize) {
  const ClassInfo& info = class_info(class_index);
  ShapedSource src;
  if (!randomize || info.family == Family::kOfdm) {
    src.waveform = mod::gen_clean(class_index, rng, length);
    return src;
  }
  if (is_linear(info.family)) {
    const double alpha = random_pulse_shape_linear(rng);
    src.waveform = mod::gen_linear_mod(class_index, rng, alpha, length);
    src.shaping = make_step(ImpairmentKind::kRrcPulseShape);
    src.shaping->params["alpha"] = alpha;
    return src;
  }
  mod::FskSpec spec = mod::FskSpec::for_class(class_index);
  if (spec.gaussian()) {
    spec.bt = random_pulse_shape_gaussian(rng);
    src.waveform = mod::gen_fsk(spec, rng, length);
    src.waveform.descriptor = describe(class_index, spec.samples_per_symbol());
    src.shaping = make_step(ImpairmentKind::kGaussianPulseShape);
    src.shaping->params["bt"] = spec.bt;
    return src;
  }
  const double cutoff = rng.uniform(kFskCutoffMin, kFskCutoffMax);
  mod::Waveform wide = mod::gen_fsk(spec, rng, 2 * length);
  src.waveform.frame = normalize_unit_power(fsk_lpf_resample(wide.frame, cutoff, length));
  src.waveform.descriptor = describe(class_index, fsk_resampled_sps(cutoff));
  src.shaping = make_step(ImpairmentKind::kFskLowpassResample);
  src.shaping->params["cutoff"] = cutoff;
  return src;
}

ChainResult apply_impairment_chain(const ComplexFrame& clean, const SignalDescriptor& descriptor,
                                   const ImpairmentProfile& profile, RngStream& rng, ChainTrace* trace) {
  profile.validate();
  if (clean.empty()) throw InvalidArgument("apply_impairment_chain: empty frame");
  ChainResult result;
  result.descriptor = descriptor;
  ComplexFrame x = clean;
  double sps = descriptor.samples_per_symbol;

  const auto run = [&](ImpairmentStep step) {
    x = apply_step(step, x, trace);
    result.record.steps.push_back(std::move(step));
  };

  if (rng.bernoulli(profile.phase_shift_prob)) {
    ImpairmentStep step = make_step(ImpairmentKind::kPhaseShift);
    step.params["phi"] = rng.uniform(-profile.phase_shift_max, profile.phase_shift_max);
    run(std::move(step));
  }
  if (rng.bernoulli(profile.time_shift_prob)) {
    ImpairmentStep step = make_step(ImpairmentKind::kTimeShift);
    const std::int64_t max_shift =
        std::min<std::int64_t>(profile.time_shift_max, static_cast<std::int64_t>(x.size()) - 1);
    step.params["shift"] = static_cast<double>(rng.uniform_int(-max_shift, max_shift));
    run(std::move(step));
  }
  if (rng.bernoulli(profile.freq_shift_prob)) {
    ImpairmentStep step = make_step(ImpairmentKind::kFreqShift);
    step.params["freq"] = rng.uniform(-profile.freq_shift_max, profile.freq_shift_max);
    run(std::move(step));
  }
  if (rng.bernoulli(profile.rayleigh_prob)) {
    ImpairmentStep step = make_step(ImpairmentKind::kRayleigh);
    step.params["num_taps"] =
        static_cast<double>(rng.uniform_int(profile.rayleigh_min_taps, profile.rayleigh_max_taps));
    step.seed = rng.next_u64();
    run(std::move(step));
  }
  if (rng.bernoulli(profile.iq_imbalance_prob)) {
    ImpairmentStep step = make_step(ImpairmentKind::kIqImbalance);
    step.params["amp_db"] = rng.uniform(-profile.iq_amp_db_max, profile.iq_amp_db_max);
    step.params["phase_rad"] = rng.uniform(-profile.iq_phase_max, profile.iq_phase_max);
    step.params["dc"] = rng.uniform(-profile.iq_dc_max, profile.iq_dc_max);
    run(std::move(step));
  }
  if (rng.bernoulli(profile.resample_prob)) {
    ImpairmentStep step = make_step(ImpairmentKind::kResample);
    const double rate = rng.uniform(profile.resample_min, profile.resample_max);
    step.params["rate"] = rate;
    sps *= rate;
    run(std::move(step));
  }

  const double esn0 = rng.uniform(profile.esn0_min_db, profile.esn0_max_db);
  result.record.target_esn0_db = esn0;
  if (std::isfinite(esn0)) {
    ImpairmentStep step = make_step(ImpairmentKind::kAwgn);
    step.params["esn0_db"] = esn0;
    step.params["sps"] = sps;
    step.seed = rng.next_u64();
    run(std::move(step));
    result.descriptor.snr_db = esn0;
  } else if (trace != nullptr) {
    trace->pre_noise = x;
    trace->noise = ComplexFrame();
    trace->samples_per_symbol = sps;
  }
  result.descriptor.samples_per_symbol = sps;
  result.frame = std::move(x);
  return result;
}

ComplexFrame replay(const ImpairmentRecord& record, const ComplexFrame& clean, ChainTrace* trace) {
  ComplexFrame x = clean;
  for (const ImpairmentStep& step : record.steps) {
    if (is_generation_time(step.kind)) continue;
    x = apply_step(step, x, trace);
  }
  return x;
}

}  // namespace sigforge::impair
