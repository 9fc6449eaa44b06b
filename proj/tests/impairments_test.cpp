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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "sigforge/dsp.hpp"
#include "sigforge/error.hpp"
#include "sigforge/impairments.hpp"
#include "sigforge/measurement.hpp"
#include "sigforge/modulators.hpp"
#include "test_support.hpp"

namespace sigforge::impair {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

ComplexFrame unit_qpsk(std::uint64_t seed, std::size_t length = kDefaultFrameLength) {
  RngStream rng(seed);
  return mod::gen_linear_mod(4, rng, 0.35, length).frame;
}

double power_db(double p) { return 10.0 * std::log10(p); }

TEST(Awgn, InfiniteEsN0LeavesFrameUntouched) {
  const ComplexFrame x = unit_qpsk(1);
  RngStream rng(2);
  const RngStream before = rng;
  EXPECT_EQ(add_awgn(x, kInf, 2.0, rng), x);
  EXPECT_EQ(rng, before);
}

TEST(Awgn, NoisePowerMatchesVariance) {
  const ComplexFrame x = unit_qpsk(3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RngStream rng(seed);
    const ComplexFrame y = add_awgn(x, 10.0, 2.0, rng);
    ComplexFrame noise(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) noise[n] = y[n] - x[n];
    EXPECT_NEAR(mean_power(noise), 0.2, 0.2 * 0.02);
  }
  EXPECT_DOUBLE_EQ(noise_variance(10.0, 2.0), 0.2);
  EXPECT_DOUBLE_EQ(noise_variance(0.0, 8.0), 8.0);
}

TEST(Awgn, PerSampleSnrAtZeroDb) {
  const ComplexFrame x = unit_qpsk(4);
  RngStream rng(5);
  const ComplexFrame y = add_awgn(x, 0.0, 2.0, rng);
  ComplexFrame noise(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) noise[n] = y[n] - x[n];
  EXPECT_NEAR(power_db(mean_power(x) / mean_power(noise)), -3.0103, 0.2);
}

TEST(Awgn, NoiseIsCircularAndWhite) {
  RngStream rng(6);
  const ComplexFrame n = awgn_noise(1 << 16, 1.0, rng);
  double re2 = 0.0;
  double im2 = 0.0;
  Sample corr = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    re2 += n[i].real() * n[i].real();
    im2 += n[i].imag() * n[i].imag();
    if (i > 0) corr += n[i] * std::conj(n[i - 1]);
  }
  EXPECT_NEAR(re2 / static_cast<double>(n.size()), 0.5, 0.01);
  EXPECT_NEAR(im2 / static_cast<double>(n.size()), 0.5, 0.01);
  EXPECT_LT(std::abs(corr) / static_cast<double>(n.size()), 0.02);
  EXPECT_NEAR(mean_power(n), 1.0, 1e-12);
}

TEST(Awgn, RejectsNonPositiveSps) {
  RngStream rng(1);
  EXPECT_THROW(add_awgn(unit_qpsk(1), 10.0, 0.0, rng), InvalidArgument);
  EXPECT_THROW(add_awgn(unit_qpsk(1), 10.0, -1.0, rng), InvalidArgument);
}

TEST(PulseShape, LinearAlphaRangeAndMean) {
  RngStream rng(10);
  double sum = 0.0;
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double a = random_pulse_shape_linear(rng);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    sum += a;
  }
  EXPECT_GE(lo, 0.15);
  EXPECT_LE(hi, 0.60);
  EXPECT_NEAR(sum / 10000.0, 0.375, 0.01);
  RngStream a(4);
  RngStream b(4);
  EXPECT_EQ(random_pulse_shape_linear(a), random_pulse_shape_linear(b));
}

TEST(PulseShape, GaussianBtRangeAndMean) {
  RngStream rng(11);
  double sum = 0.0;
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double bt = random_pulse_shape_gaussian(rng);
    lo = std::min(lo, bt);
    hi = std::max(hi, bt);
    sum += bt;
  }
  EXPECT_GE(lo, 0.1);
  EXPECT_LE(hi, 0.5);
  EXPECT_NEAR(sum / 10000.0, 0.3, 0.01);
  RngStream a(4);
  RngStream b(4);
  EXPECT_EQ(random_pulse_shape_gaussian(a), random_pulse_shape_gaussian(b));
}

TEST(FskLowpassResample, MidpointCutoffMapsRetainedBandToHalfBand) {
  // A wideband input fills the whole retained band [-c, c], which the rate
  // change by 4c maps onto [-0.25, 0.25].
  const double c = 0.5 * (kFskCutoffMin + kFskCutoffMax);
  const ComplexFrame wide = testing::make_noise(2 * kDefaultFrameLength, 12);
  const ComplexFrame out = fsk_lpf_resample(wide, c, kDefaultFrameLength);
  EXPECT_EQ(out.size(), kDefaultFrameLength);
  const double obw = measure::occupied_bandwidth(measure::welch_psd(out), 0.99);
  EXPECT_NEAR(obw, 0.5, 0.1);
  EXPECT_DOUBLE_EQ(fsk_resampled_sps(c), 32.0 * c);
}

TEST(FskLowpassResample, FskSourceKeepsExactLength) {
  RngStream rng(12);
  const mod::Waveform w = mod::gen_fsk(mod::FskSpec::for_class(25), rng, 2 * kDefaultFrameLength);
  for (double c : {kFskCutoffMin, 0.3125, kFskCutoffMax}) {
    const ComplexFrame out = fsk_lpf_resample(w.frame, c, kDefaultFrameLength);
    EXPECT_EQ(out.size(), kDefaultFrameLength);
    EXPECT_TRUE(out.all_finite());
    // 2x-long source covers the whole output after the 4c rate change.
    EXPECT_GT(std::abs(out[kDefaultFrameLength - 1]), 0.1);
  }
}

TEST(FskLowpassResample, StopbandAttenuatedFortyDb) {
  for (double c : {kFskCutoffMin, 0.3, kFskCutoffMax}) {
    // Blackman transition is about 5.5 / taps wide.
    const double stop = c + 6.0 / static_cast<double>(kFskLowpassTaps);
    const double pass = c / 2.0;
    const ComplexFrame hi_tone = testing::make_tone(kDefaultFrameLength, std::min(stop, 0.49));
    const ComplexFrame lo_tone = testing::make_tone(kDefaultFrameLength, pass);
    const ComplexFrame hi_out = fsk_lpf_resample(hi_tone, c);
    const ComplexFrame lo_out = fsk_lpf_resample(lo_tone, c);
    // Ignore the filter's edge transients.
    const auto interior_power = [](const ComplexFrame& f, std::size_t end) {
      double p = 0.0;
      for (std::size_t n = 300; n < end - 300; ++n) p += std::norm(f[n]);
      return p / static_cast<double>(end - 600);
    };
    const std::size_t end = std::min<std::size_t>(kDefaultFrameLength,
                                                  static_cast<std::size_t>(4.0 * c * kDefaultFrameLength));
    if (stop < 0.49) {
      EXPECT_LT(power_db(interior_power(hi_out, end)), -40.0) << c;
    }
    EXPECT_NEAR(power_db(interior_power(lo_out, end)), 0.0, 0.1) << c;
  }
}

TEST(FskLowpassResample, RngOverloadDrawsCutoffInRange) {
  RngStream rng(13);
  const ComplexFrame x = testing::make_tone(1024, 0.05);
  for (int i = 0; i < 20; ++i) {
    const auto [out, c] = fsk_lpf_resample(x, rng);
    EXPECT_GE(c, kFskCutoffMin);
    EXPECT_LT(c, kFskCutoffMax);
    EXPECT_EQ(out.size(), 1024u);
  }
  EXPECT_THROW(fsk_lpf_resample(x, 0.0), InvalidArgument);
}

TEST(PhaseShift, Examples) {
  const ComplexFrame x = unit_qpsk(20);
  EXPECT_EQ(phase_shift(x, 0.0), x);
  const ComplexFrame neg = phase_shift(x, kPi);
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_EQ(neg[n], -x[n]);
  const ComplexFrame one{{1.0, 0.0}};
  EXPECT_NEAR(std::abs(phase_shift(one, kPi / 2)[0] - Sample(0, 1)), 0.0, 1e-15);
  for (double phi : {0.3, -2.1, 3.0}) {
    EXPECT_NEAR(mean_power(phase_shift(x, phi)), mean_power(x), 1e-12);
  }
  EXPECT_THROW(phase_shift(x, kInf), InvalidArgument);
}

TEST(TimeShift, Examples) {
  const ComplexFrame x = unit_qpsk(21);
  EXPECT_EQ(time_shift(x, 0), x);
  const ComplexFrame d = time_shift(x, 32);
  ASSERT_EQ(d.size(), x.size());
  for (std::size_t n = 0; n < 32; ++n) EXPECT_EQ(d[n], Sample(0.0));
  for (std::size_t n = 32; n < x.size(); ++n) EXPECT_EQ(d[n], x[n - 32]);
  const ComplexFrame back = time_shift(d, -32);
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (n >= x.size() - 32) {
      EXPECT_EQ(back[n], Sample(0.0));
    } else {
      EXPECT_EQ(back[n], x[n]);
    }
  }
  EXPECT_THROW(time_shift(x, static_cast<std::int64_t>(x.size())), InvalidArgument);
}

TEST(FreqShift, Examples) {
  const ComplexFrame tone = testing::make_tone(4096, 0.10);
  EXPECT_EQ(freq_shift(tone, 0.0), tone);
  EXPECT_NEAR(static_cast<double>(testing::peak_bin(freq_shift(tone, 0.05))), std::round(0.15 * 4096), 1.0);
  const ComplexFrame x = unit_qpsk(22);
  const ComplexFrame round_trip = freq_shift(freq_shift(x, 0.123), -0.123);
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_NEAR(std::abs(round_trip[n] - x[n]), 0.0, 1e-12);
  EXPECT_NEAR(mean_power(freq_shift(x, -0.16)), mean_power(x), 1e-12);
  EXPECT_THROW(freq_shift(x, 0.5), InvalidArgument);
}

TEST(Rayleigh, SingleTapIsComplexScaling) {
  const ComplexFrame x = unit_qpsk(23, 512);
  RngStream rng(24);
  const std::vector<Sample> h = rayleigh_taps(1, rng);
  ASSERT_EQ(h.size(), 1u);
  const ComplexFrame y = dsp::filter_causal(x, h);
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_NEAR(std::abs(y[n] - h[0] * x[n]), 0.0, 1e-15);
}

TEST(Rayleigh, TapPowersFollowTaperedProfile) {
  const int taps = 10;
  std::vector<double> mean(taps, 0.0);
  const int trials = 20000;
  RngStream rng(25);
  for (int t = 0; t < trials; ++t) {
    const std::vector<Sample> h = rayleigh_taps(taps, rng);
    for (int k = 0; k < taps; ++k) mean[static_cast<std::size_t>(k)] += std::norm(h[static_cast<std::size_t>(k)]);
  }
  for (int k = 0; k < taps; ++k) {
    const double want = (1.0 - static_cast<double>(k) / taps) / 5.5;
    EXPECT_NEAR(mean[static_cast<std::size_t>(k)] / trials, want, 0.05 * want + 1e-3) << k;
  }
}

TEST(Rayleigh, AveragePowerPreserved) {
  const ComplexFrame x = testing::make_noise(4096, 26);
  const double px = mean_power(x);
  RngStream rng(27);
  double sum = 0.0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    const int taps = static_cast<int>(rng.uniform_int(2, 20));
    sum += mean_power(rayleigh_channel(x, taps, rng)) / px;
  }
  EXPECT_NEAR(sum / trials, 1.0, 0.02);
}

TEST(Rayleigh, FrequencySelectiveForTenOrMoreTaps) {
  RngStream rng(28);
  ComplexFrame impulse(256);
  impulse[0] = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int taps = 10 + trial % 11;
    const ComplexFrame h = rayleigh_channel(impulse, taps, rng);
    const std::vector<Sample> resp = testing::naive_dft(h.vector());
    double lo = kInf;
    double hi = 0.0;
    for (const Sample& v : resp) {
      lo = std::min(lo, std::norm(v));
      hi = std::max(hi, std::norm(v));
    }
    EXPECT_GT(power_db(hi / lo), 3.0) << trial;
  }
  EXPECT_THROW(rayleigh_channel(impulse, 1, rng), InvalidArgument);
  EXPECT_THROW(rayleigh_channel(impulse, 21, rng), InvalidArgument);
}

TEST(IqImbalance, Examples) {
  const ComplexFrame x = unit_qpsk(29);
  const ComplexFrame same = iq_imbalance(x, 0.0, 0.0, 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_EQ(same[n], x[n]);

  const ComplexFrame dc = iq_imbalance(x, 0.0, 0.0, 0.1);
  Sample mean_x = 0.0;
  Sample mean_dc = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    mean_x += x[n];
    mean_dc += dc[n];
  }
  const Sample shift = (mean_dc - mean_x) / static_cast<double>(x.size());
  EXPECT_NEAR(shift.real(), 0.1, 1e-12);
  EXPECT_NEAR(shift.imag(), 0.0, 1e-12);

  const ComplexFrame g = iq_imbalance(ComplexFrame{{1.0, 1.0}}, 3.0, 0.0, 0.0);
  EXPECT_NEAR(g[0].real(), std::pow(10.0, 3.0 / 40.0), 1e-15);
  EXPECT_NEAR(g[0].imag(), std::pow(10.0, -3.0 / 40.0), 1e-15);

  // Phase skew: y = cos(phi/2) x + j sin(phi/2) conj(x) on x = 1.
  const double phi = kPi / 180.0;
  const ComplexFrame p = iq_imbalance(ComplexFrame{{1.0, 0.0}}, 0.0, phi, 0.0);
  EXPECT_NEAR(p[0].real(), std::cos(phi / 2), 1e-15);
  EXPECT_NEAR(p[0].imag(), std::sin(phi / 2), 1e-15);
}

TEST(Resample, RationalApproximation) {
  using P = std::pair<std::int64_t, std::int64_t>;
  EXPECT_EQ(rational_approximation(1.25), P(5, 4));
  EXPECT_EQ(rational_approximation(0.75), P(3, 4));
  EXPECT_EQ(rational_approximation(kPi, 1000), P(355, 113));
  EXPECT_EQ(rational_approximation(1.0), P(1, 1));
  RngStream rng(30);
  for (int i = 0; i < 1000; ++i) {
    const double r = rng.uniform(0.75, 1.5);
    const auto [p, q] = rational_approximation(r);
    EXPECT_LE(q, 1024);
    // Brute force over every denominator.
    double best = 1.0;
    for (int d = 1; d <= 1024; ++d) best = std::min(best, std::abs(std::round(r * d) / d - r));
    EXPECT_LE(std::abs(static_cast<double>(p) / static_cast<double>(q) - r), best + 1e-15) << r;
  }
  EXPECT_THROW(rational_approximation(0.0), InvalidArgument);
}

TEST(Resample, UnitRateIsExactCopy) {
  const ComplexFrame x = unit_qpsk(31);
  EXPECT_EQ(resample(x, 1.0), x);
  EXPECT_EQ(random_resample(x, 1.0), x);
}

TEST(Resample, TonePeakMovesByRate) {
  const ComplexFrame tone = testing::make_tone(4096, 0.10);
  for (double rate : {1.25, 0.8, 1.5, 0.75}) {
    const ComplexFrame out = random_resample(tone, rate);
    ASSERT_EQ(out.size(), 4096u);
    // Analyse only the populated part so zero padding does not widen the peak.
    const std::size_t used = std::min<std::size_t>(4096, static_cast<std::size_t>(4096 * rate));
    ComplexFrame head(std::vector<Sample>(out.begin(), out.begin() + static_cast<long>(used)));
    const double want = 0.10 / rate * static_cast<double>(used);
    EXPECT_NEAR(static_cast<double>(testing::peak_bin(head)), want, 1.0) << rate;
  }
}

TEST(Resample, OutputLengthAndPadding) {
  const ComplexFrame x = unit_qpsk(32);
  EXPECT_EQ(resample(x, 1.25).size(), 5120u);
  EXPECT_EQ(resample(x, 0.75).size(), 3072u);
  const ComplexFrame padded = random_resample(x, 0.75);
  ASSERT_EQ(padded.size(), 4096u);
  for (std::size_t n = 3072; n < 4096; ++n) EXPECT_EQ(padded[n], Sample(0.0));
  EXPECT_GT(std::abs(padded[3071]), 0.0);
  EXPECT_THROW(resample(x, 0.0), InvalidArgument);
}

TEST(Resample, PreservesInBandAmplitude) {
  const ComplexFrame tone = testing::make_tone(4096, 0.05);
  const ComplexFrame out = resample(tone, 1.37);
  for (std::size_t n = 600; n + 600 < out.size(); ++n) ASSERT_NEAR(std::abs(out[n]), 1.0, 1e-3) << n;
}

TEST(Profile, DefaultsAreTheDatasetValues) {
  const ImpairmentProfile p = ImpairmentProfile::standard();
  EXPECT_EQ(p.phase_shift_prob, 0.9);
  EXPECT_EQ(p.phase_shift_max, kPi);
  EXPECT_EQ(p.time_shift_prob, 0.9);
  EXPECT_EQ(p.time_shift_max, 32);
  EXPECT_EQ(p.freq_shift_prob, 0.7);
  EXPECT_EQ(p.freq_shift_max, 0.16);
  EXPECT_EQ(p.rayleigh_prob, 0.5);
  EXPECT_EQ(p.rayleigh_min_taps, 2);
  EXPECT_EQ(p.rayleigh_max_taps, 20);
  EXPECT_EQ(p.iq_imbalance_prob, 0.9);
  EXPECT_EQ(p.iq_amp_db_max, 3.0);
  EXPECT_EQ(p.iq_phase_max, kPi / 180.0);
  EXPECT_EQ(p.iq_dc_max, 0.1);
  EXPECT_EQ(p.resample_prob, 0.5);
  EXPECT_EQ(p.resample_min, 0.75);
  EXPECT_EQ(p.resample_max, 1.5);
  EXPECT_EQ(p.esn0_min_db, -2.0);
  EXPECT_EQ(p.esn0_max_db, 30.0);
  EXPECT_NO_THROW(p.validate());
  ImpairmentProfile bad = p;
  bad.rayleigh_prob = 1.5;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = p;
  bad.resample_min = 2.0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(Chain, ClosedGatesAndNoNoiseIsIdentity) {
  const ComplexFrame x = unit_qpsk(40);
  RngStream rng(41);
  const ChainResult r = apply_impairment_chain(x, describe(4, 2.0), ImpairmentProfile::none(), rng);
  EXPECT_EQ(r.frame, x);
  EXPECT_TRUE(r.record.steps.empty());
  EXPECT_FALSE(r.descriptor.snr_db.has_value());
}

TEST(Chain, ReplayIsBitExactAndChainIsDeterministic) {
  for (int c = 0; c < kNumClasses; ++c) {
    RngStream src_rng = derive_stream(42, static_cast<std::uint64_t>(c));
    const ShapedSource src = gen_impaired_source(c, src_rng);
    RngStream a = src_rng;
    RngStream b = src_rng;
    const ChainResult ra = apply_impairment_chain(src.waveform.frame, src.waveform.descriptor,
                                                  ImpairmentProfile::standard(), a);
    const ChainResult rb = apply_impairment_chain(src.waveform.frame, src.waveform.descriptor,
                                                  ImpairmentProfile::standard(), b);
    EXPECT_EQ(ra.frame, rb.frame);
    EXPECT_EQ(ra.record, rb.record);
    EXPECT_EQ(replay(ra.record, src.waveform.frame), ra.frame) << class_info(c).name;
    EXPECT_EQ(ra.frame.size(), kDefaultFrameLength);
    EXPECT_TRUE(ra.frame.all_finite());
  }
}

TEST(Chain, StepsFollowFixedOrder) {
  const ComplexFrame x = unit_qpsk(43, 512);
  ImpairmentProfile all = ImpairmentProfile::standard();
  all.phase_shift_prob = all.time_shift_prob = all.freq_shift_prob = 1.0;
  all.rayleigh_prob = all.iq_imbalance_prob = all.resample_prob = 1.0;
  RngStream rng(44);
  const ChainResult r = apply_impairment_chain(x, describe(4, 2.0), all, rng);
  const std::vector<ImpairmentKind> want{ImpairmentKind::kPhaseShift, ImpairmentKind::kTimeShift,
                                         ImpairmentKind::kFreqShift,  ImpairmentKind::kRayleigh,
                                         ImpairmentKind::kIqImbalance, ImpairmentKind::kResample,
                                         ImpairmentKind::kAwgn};
  ASSERT_EQ(r.record.steps.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(r.record.steps[i].kind, want[i]);
  const double rate = r.record.steps[5].param("rate");
  EXPECT_DOUBLE_EQ(r.descriptor.samples_per_symbol, 2.0 * rate);
  EXPECT_DOUBLE_EQ(r.record.steps[6].param("sps"), 2.0 * rate);
}

TEST(Chain, GateRatesAndParameterRanges) {
  const ComplexFrame x = unit_qpsk(45, 256);
  const ImpairmentProfile p = ImpairmentProfile::standard();
  std::array<int, 6> hits{};
  const ImpairmentKind kinds[] = {ImpairmentKind::kPhaseShift, ImpairmentKind::kTimeShift,
                                  ImpairmentKind::kFreqShift,  ImpairmentKind::kRayleigh,
                                  ImpairmentKind::kIqImbalance, ImpairmentKind::kResample};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    RngStream rng = derive_stream(46, static_cast<std::uint64_t>(i));
    const ChainResult r = apply_impairment_chain(x, describe(4, 2.0), p, rng);
    for (std::size_t k = 0; k < 6; ++k) hits[k] += r.record.contains(kinds[k]);
    if (const ImpairmentStep* s = r.record.find(ImpairmentKind::kPhaseShift)) {
      ASSERT_GE(s->param("phi"), -kPi);
      ASSERT_LE(s->param("phi"), kPi);
    }
    if (const ImpairmentStep* s = r.record.find(ImpairmentKind::kTimeShift)) {
      ASSERT_GE(s->param("shift"), -32.0);
      ASSERT_LE(s->param("shift"), 32.0);
      ASSERT_EQ(s->param("shift"), std::round(s->param("shift")));
    }
    if (const ImpairmentStep* s = r.record.find(ImpairmentKind::kFreqShift)) {
      ASSERT_LE(std::abs(s->param("freq")), 0.16);
    }
    if (const ImpairmentStep* s = r.record.find(ImpairmentKind::kRayleigh)) {
      ASSERT_GE(s->param("num_taps"), 2.0);
      ASSERT_LE(s->param("num_taps"), 20.0);
    }
    if (const ImpairmentStep* s = r.record.find(ImpairmentKind::kIqImbalance)) {
      ASSERT_LE(std::abs(s->param("amp_db")), 3.0);
      ASSERT_LE(std::abs(s->param("phase_rad")), kPi / 180.0);
      ASSERT_LE(std::abs(s->param("dc")), 0.1);
    }
    if (const ImpairmentStep* s = r.record.find(ImpairmentKind::kResample)) {
      ASSERT_GE(s->param("rate"), 0.75);
      ASSERT_LE(s->param("rate"), 1.5);
    }
    ASSERT_GE(r.record.target_esn0_db, -2.0);
    ASSERT_LE(r.record.target_esn0_db, 30.0);
  }
  const double want[] = {0.9, 0.9, 0.7, 0.5, 0.9, 0.5};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(hits[k] / static_cast<double>(n), want[k], 0.02) << k;
}

TEST(Chain, NoiseCalibratedAtOutput) {
  for (int c = 0; c < kNumClasses; ++c) {
    RngStream rng = derive_stream(47, static_cast<std::uint64_t>(c));
    const ShapedSource src = gen_impaired_source(c, rng);
    ChainTrace trace;
    const ChainResult r = apply_impairment_chain(src.waveform.frame, src.waveform.descriptor,
                                                 ImpairmentProfile::standard(), rng, &trace);
    ASSERT_TRUE(r.descriptor.snr_db.has_value());
    EXPECT_NEAR(mean_power(trace.pre_noise), 1.0, 1e-12);
    const double measured = measure::measure_esn0(trace.pre_noise, trace.noise, trace.samples_per_symbol);
    EXPECT_NEAR(measured, *r.descriptor.snr_db, 1e-9) << class_info(c).name;
    for (std::size_t n = 0; n < r.frame.size(); ++n) {
      ASSERT_EQ(r.frame[n], trace.pre_noise[n] + trace.noise[n]);
    }
  }
}

TEST(ImpairedSource, ShapingRoutesByFamily) {
  RngStream rng(48);
  const ShapedSource lin = gen_impaired_source(8, rng);
  ASSERT_TRUE(lin.shaping.has_value());
  EXPECT_EQ(lin.shaping->kind, ImpairmentKind::kRrcPulseShape);
  EXPECT_GE(lin.shaping->param("alpha"), kRrcAlphaMin);
  EXPECT_LT(lin.shaping->param("alpha"), kRrcAlphaMax);

  const ShapedSource gmsk = gen_impaired_source(28, rng);
  ASSERT_TRUE(gmsk.shaping.has_value());
  EXPECT_EQ(gmsk.shaping->kind, ImpairmentKind::kGaussianPulseShape);
  EXPECT_EQ(gmsk.waveform.descriptor.samples_per_symbol, 2.0);

  const ShapedSource fsk = gen_impaired_source(25, rng);
  ASSERT_TRUE(fsk.shaping.has_value());
  EXPECT_EQ(fsk.shaping->kind, ImpairmentKind::kFskLowpassResample);
  EXPECT_DOUBLE_EQ(fsk.waveform.descriptor.samples_per_symbol, 32.0 * fsk.shaping->param("cutoff"));
  EXPECT_EQ(fsk.waveform.frame.size(), kDefaultFrameLength);

  const ShapedSource ofdm = gen_impaired_source(41, rng);
  EXPECT_FALSE(ofdm.shaping.has_value());

  const ShapedSource plain = gen_impaired_source(8, rng, kDefaultFrameLength, false);
  EXPECT_FALSE(plain.shaping.has_value());
  for (const ShapedSource* s : {&lin, &gmsk, &fsk, &ofdm, &plain}) {
    EXPECT_NEAR(mean_power(s->waveform.frame), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace sigforge::impair
