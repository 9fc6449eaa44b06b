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

#include "sigforge/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "sigforge/dsp.hpp"
#include "sigforge/error.hpp"
#include "sigforge/fft.hpp"

namespace sigforge::measure {
namespace {

double to_db(double p) {
  const double floor_linear = std::pow(10.0, kDbFloor / 10.0);
  return 10.0 * std::log10(std::max(p, floor_linear));
}

// |FFT(w * x[start:start+nfft])|^2 / sum(w^2), fftshifted.
std::vector<double> periodogram(const ComplexFrame& frame, std::size_t start,
                                const std::vector<double>& window, double window_energy) {
  const std::size_t nfft = window.size();
  std::vector<Sample> seg(nfft);
  for (std::size_t i = 0; i < nfft; ++i) seg[i] = frame[start + i] * window[i];
  const std::vector<Sample> spectrum = dsp::fftshift(dsp::fft(seg));
  std::vector<double> p(nfft);
  for (std::size_t k = 0; k < nfft; ++k) p[k] = std::norm(spectrum[k]) / window_energy;
  return p;
}

}  // namespace

double PsdEstimate::total_power() const {
  if (density.empty()) return 0.0;
  return std::accumulate(density.begin(), density.end(), 0.0) / static_cast<double>(density.size());
}

PsdEstimate welch_psd(const ComplexFrame& frame, std::size_t nfft, double overlap) {
  if (nfft == 0 || nfft > frame.size()) throw InvalidArgument("welch_psd: nfft must be in [1, len]");
  if (!(overlap >= 0.0 && overlap < 1.0)) throw InvalidArgument("welch_psd: overlap must be in [0, 1)");
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(static_cast<double>(nfft) * (1.0 - overlap))));
  const std::vector<double> window = dsp::hann_window(nfft);
  double window_energy = 0.0;
  for (double w : window) window_energy += w * w;

  PsdEstimate psd;
  psd.nfft = nfft;
  psd.overlap = overlap;
  psd.density.assign(nfft, 0.0);
  for (std::size_t start = 0; start + nfft <= frame.size(); start += hop) {
    const std::vector<double> p = periodogram(frame, start, window, window_energy);
    for (std::size_t k = 0; k < nfft; ++k) psd.density[k] += p[k];
    ++psd.segments;
  }
  for (double& d : psd.density) d /= static_cast<double>(psd.segments);
  psd.frequencies.resize(nfft);
  psd.density_db.resize(nfft);
  for (std::size_t k = 0; k < nfft; ++k) {
    psd.frequencies[k] = -0.5 + static_cast<double>(k) / static_cast<double>(nfft);
    psd.density_db[k] = to_db(psd.density[k]);
  }
  return psd;
}

Spectrogram spectrogram(const ComplexFrame& frame, std::size_t nfft, std::size_t hop) {
  if (nfft == 0 || nfft > frame.size()) throw InvalidArgument("spectrogram: nfft must be in [1, len]");
  if (hop == 0) throw InvalidArgument("spectrogram: hop must be positive");
  const std::vector<double> window = dsp::hann_window(nfft);
  double window_energy = 0.0;
  for (double w : window) window_energy += w * w;

  Spectrogram spec;
  spec.num_freqs = nfft;
  spec.num_times = (frame.size() - nfft) / hop + 1;
  spec.db.assign(spec.num_freqs * spec.num_times, 0.0);
  for (std::size_t t = 0; t < spec.num_times; ++t) {
    const std::vector<double> p = periodogram(frame, t * hop, window, window_energy);
    for (std::size_t f = 0; f < nfft; ++f) spec.db[f * spec.num_times + t] = to_db(p[f]);
  }
  return spec;
}

double occupied_bandwidth(const PsdEstimate& psd, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidArgument("occupied_bandwidth: fraction must be in (0, 1]");
  const std::size_t n = psd.density.size();
  if (n == 0) throw InvalidArgument("occupied_bandwidth: empty estimate");
  std::vector<double> cumulative(n);
  std::partial_sum(psd.density.begin(), psd.density.end(), cumulative.begin());
  const double total = cumulative.back();
  if (!(total > 0.0)) throw ZeroPowerError("occupied_bandwidth: estimate carries no power");
  const double tail = 0.5 * (1.0 - fraction) * total;
  const auto lower = static_cast<std::size_t>(
      std::upper_bound(cumulative.begin(), cumulative.end(), tail) - cumulative.begin());
  const auto upper = static_cast<std::size_t>(
      std::lower_bound(cumulative.begin(), cumulative.end(), total - tail) - cumulative.begin());
  const std::size_t hi = std::min(upper, n - 1);
  const std::size_t lo = std::min(lower, hi);
  return static_cast<double>(hi - lo + 1) / static_cast<double>(n);
}

double measure_esn0(const ComplexFrame& clean, const ComplexFrame& noise, double samples_per_symbol) {
  if (!(samples_per_symbol > 0.0)) throw InvalidArgument("measure_esn0: samples_per_symbol must be positive");
  const double pn = noise.empty() ? 0.0 : mean_power(noise);
  if (pn == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(mean_power(clean) * samples_per_symbol / pn);
}

double envelope_constancy(const ComplexFrame& frame) {
  if (frame.empty()) throw InvalidArgument("envelope_constancy: empty frame");
  double mean = 0.0;
  for (const Sample& s : frame) mean += std::abs(s);
  mean /= static_cast<double>(frame.size());
  if (mean == 0.0) throw ZeroPowerError("envelope_constancy: all-zero frame");
  double worst = 0.0;
  for (const Sample& s : frame) worst = std::max(worst, std::abs(std::abs(s) - mean));
  return worst / mean;
}

void write_psd_csv(const PsdEstimate& psd, std::ostream& out) {
  char line[64];
  for (std::size_t k = 0; k < psd.frequencies.size(); ++k) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g\n", psd.frequencies[k], psd.density_db[k]);
    out << line;
  }
}

void write_spectrogram_pgm(const Spectrogram& spec, std::ostream& out) {
  const auto [lo_it, hi_it] = std::minmax_element(spec.db.begin(), spec.db.end());
  const double lo = spec.db.empty() ? 0.0 : *lo_it;
  const double span = spec.db.empty() ? 0.0 : *hi_it - lo;
  out << "P5\n" << spec.num_times << ' ' << spec.num_freqs << "\n255\n";
  std::vector<char> row(spec.num_times);
  for (std::size_t r = 0; r < spec.num_freqs; ++r) {
    const std::size_t f = spec.num_freqs - 1 - r;
    for (std::size_t t = 0; t < spec.num_times; ++t) {
      const double v = span > 0.0 ? (spec.at(f, t) - lo) / span * 255.0 : 0.0;
      row[t] = static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 255.0))));
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace sigforge::measure
