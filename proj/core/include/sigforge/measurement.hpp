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

#ifndef SIGFORGE_MEASUREMENT_HPP_
#define SIGFORGE_MEASUREMENT_HPP_

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "sigforge/frame.hpp"

namespace sigforge::measure {

inline constexpr std::size_t kDefaultNfft = 256;
inline constexpr double kDefaultOverlap = 0.5;
inline constexpr std::size_t kDefaultHop = 128;
// Density floor applied before converting to dB.
inline constexpr double kDbFloor = -300.0;

struct PsdEstimate {
  std::vector<double> frequencies;  // cycles/sample, ascending over [-0.5, 0.5)
  std::vector<double> density;      // linear; the mean over bins is the mean power
  std::vector<double> density_db;
  std::size_t nfft = 0;
  double overlap = 0.0;
  std::size_t segments = 0;

  double total_power() const;
};

// Welch average of periodic-Hann periodograms. Each bin is |X|^2 / sum(w^2),
// so integrating over the unit band gives the mean power.
PsdEstimate welch_psd(const ComplexFrame& frame, std::size_t nfft = kDefaultNfft,
                      double overlap = kDefaultOverlap);

struct Spectrogram {
  std::size_t num_freqs = 0;  // nfft, ascending frequency
  std::size_t num_times = 0;  // floor((len - nfft) / hop) + 1
  std::vector<double> db;     // [num_freqs, num_times], row-major

  double at(std::size_t f, std::size_t t) const { return db[f * num_times + t]; }
};

Spectrogram spectrogram(const ComplexFrame& frame, std::size_t nfft = kDefaultNfft,
                        std::size_t hop = kDefaultHop);

// Width in cycles/sample between the (1 - fraction)/2 and (1 + fraction)/2
// points of the cumulative PSD, measured between bin edges.
double occupied_bandwidth(const PsdEstimate& psd, double fraction);

// 10 log10(P_signal * sps / P_noise); +infinity when the noise has no power.
double measure_esn0(const ComplexFrame& clean, const ComplexFrame& noise, double samples_per_symbol);

// max |(|x[n]| - mean|x|)| / mean|x|. Throws ZeroPowerError on an all-zero frame.
double envelope_constancy(const ComplexFrame& frame);

// One "frequency,dB" line per bin, no header.
void write_psd_csv(const PsdEstimate& psd, std::ostream& out);
// Binary 8-bit PGM, one column per time step, highest frequency on the top
// row, dB range mapped linearly onto 0..255.
void write_spectrogram_pgm(const Spectrogram& spec, std::ostream& out);

}  // namespace sigforge::measure

#endif  // SIGFORGE_MEASUREMENT_HPP_
