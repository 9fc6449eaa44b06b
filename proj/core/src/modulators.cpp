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
#include "sigforge/modulators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sigforge/dsp.hpp"
#include "sigforge/error.hpp"
#include "sigforge/fft.hpp"

namespace sigforge::mod {
namespace {

constexpr double kPi = std::numbers::pi;

int log2_if_power_of_two(std::size_t m) {
  if (m == 0 || (m & (m - 1)) != 0) return 0;
  int bits = 0;
  while (m > 1) {
    m >>= 1;
    ++bits;
  }
  return bits;
}

double grid_level(int i, int levels) {
  return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(levels - 1);
}

// e^{j 2 pi k / M}, exact on the four axis points.
Sample unit_circle(int k, int m) {
  if ((4 * k) % m == 0) {
    switch ((4 * k / m) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<Sample> rectangular_grid(int columns, int rows) {
  std::vector<Sample> points;
  points.reserve(static_cast<std::size_t>(columns * rows));
  for (int q = 0; q < rows; ++q) {
    for (int i = 0; i < columns; ++i) points.emplace_back(grid_level(i, columns), grid_level(q, rows));
  }
  return points;
}

std::vector<Sample> cross_grid(int order) {
  // s x s grid with a (s/6 x s/6) block removed from each corner.
  const int side = order == 32 ? 6 : order == 128 ? 12 : 24;
  const int block = side / 6;
  std::vector<Sample> points;
  for (int q = 0; q < side; ++q) {
    for (int i = 0; i < side; ++i) {
      const bool edge_i = i < block || i >= side - block;
      const bool edge_q = q < block || q >= side - block;
      if (edge_i && edge_q) continue;
      points.emplace_back(grid_level(i, side), grid_level(q, side));
    }
  }
  return points;
}

void normalize_points(std::vector<Sample>& points) {
  double power = 0.0;
  for (const Sample& p : points) power += std::norm(p);
  power /= static_cast<double>(points.size());
  const double g = 1.0 / std::sqrt(power);
  for (Sample& p : points) p *= g;
}

ConstellationTable make_table(std::vector<Sample> points, bool normalize) {
  ConstellationTable table;
  table.bits_per_symbol = log2_if_power_of_two(points.size());
  if (normalize) normalize_points(points);
  table.points = std::move(points);
  return table;
}

double rrc_value(double t, double alpha) {
  constexpr double kSingularTolerance = 1e-10;
  if (t == 0.0) return 1.0 - alpha + 4.0 * alpha / kPi;
  const double four_at = 4.0 * alpha * t;
  if (std::abs(std::abs(four_at) - 1.0) < kSingularTolerance) {
    const double arg = kPi / (4.0 * alpha);
    return alpha / std::numbers::sqrt2 *
           ((1.0 + 2.0 / kPi) * std::sin(arg) + (1.0 - 2.0 / kPi) * std::cos(arg));
  }
  const double num = std::sin(kPi * t * (1.0 - alpha)) + four_at * std::cos(kPi * t * (1.0 + alpha));
  const double den = kPi * t * (1.0 - four_at * four_at);
  return num / den;
}

// Real-valued centered convolution, same length as x.
std::vector<double> smooth_same(std::span<const double> x, std::span<const double> taps) {
  const std::size_t half = taps.size() / 2;
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps.size(); ++k) {
      const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(n + half) - static_cast<std::ptrdiff_t>(k);
      if (idx >= 0 && static_cast<std::size_t>(idx) < x.size()) acc += taps[k] * x[static_cast<std::size_t>(idx)];
    }
    out[n] = acc;
  }
  return out;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

void require_length(std::size_t length) {
  if (length == 0) throw InvalidArgument("frame length must be positive");
}

}  // namespace

ConstellationTable build_constellation(int class_index, bool normalize) {
  const ClassInfo& info = class_info(class_index);
  const int m = info.order;
  std::vector<Sample> points;
  switch (info.family) {
    case Family::kAsk:
      for (int k = 0; k < m; ++k) points.emplace_back(grid_level(k, m), 0.0);
      break;
    case Family::kPam:
      for (int k = 0; k < m; ++k) {
        points.emplace_back(static_cast<double>(k) / static_cast<double>(m - 1), 0.0);
      }
      break;
    case Family::kPsk:
      for (int k = 0; k < m; ++k) points.push_back(unit_circle(k, m));
      break;
    case Family::kQam:
      switch (info.layout) {
        case QamLayout::kSquare: {
          const auto side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
          points = rectangular_grid(side, side);
          break;
        }
        case QamLayout::kRectangular: points = rectangular_grid(8, 4); break;
        case QamLayout::kCross: points = cross_grid(m); break;
        case QamLayout::kNone: break;
      }
      break;
    case Family::kFsk:
    case Family::kOfdm:
      throw InvalidArgument("class " + std::string(info.name) + " has no constellation");
  }
  return make_table(std::move(points), normalize);
}

std::string_view to_string(SubcarrierMod mod) noexcept {
  switch (mod) {
    case SubcarrierMod::kBpsk: return "BPSK";
    case SubcarrierMod::kQpsk: return "QPSK";
    case SubcarrierMod::kQam16: return "16QAM";
    case SubcarrierMod::kQam64: return "64QAM";
    case SubcarrierMod::kQam256: return "256QAM";
    case SubcarrierMod::kQam1024: return "1024QAM";
  }
  return "?";
}

const ConstellationTable& subcarrier_constellation(SubcarrierMod mod) {
  static const std::array<ConstellationTable, 6> tables = [] {
    std::array<ConstellationTable, 6> t;
    for (std::size_t i = 0; i < kSubcarrierMods.size(); ++i) {
      t[i] = build_constellation(*find_class(to_string(kSubcarrierMods[i])));
    }
    return t;
  }();
  return tables[static_cast<std::size_t>(mod)];
}

std::vector<double> rrc_taps(const RrcFilterSpec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw InvalidArgument("rrc_taps: alpha must be in (0, 1)");
  if (spec.samples_per_symbol < 2) throw InvalidArgument("rrc_taps: samples_per_symbol must be >= 2");
  if (spec.span_symbols < 1) throw InvalidArgument("rrc_taps: span must be >= 1 symbol");
  const int half = spec.span_symbols * spec.samples_per_symbol / 2;
  std::vector<double> taps;
  taps.reserve(static_cast<std::size_t>(2 * half + 1));
  for (int n = -half; n <= half; ++n) {
    taps.push_back(rrc_value(static_cast<double>(n) / spec.samples_per_symbol, spec.alpha));
  }
  // Mirror so the two halves are bit-identical regardless of rounding in the
  // odd-symmetric sin/cos arguments.
  for (std::size_t i = 0; i < taps.size() / 2; ++i) taps[taps.size() - 1 - i] = taps[i];
  double energy = 0.0;
  for (double t : taps) energy += t * t;
  const double g = 1.0 / std::sqrt(energy);
  for (double& t : taps) t *= g;
  return taps;
}

int gaussian_span_symbols(double bt) {
  const double sigma = std::sqrt(std::numbers::ln2) / (2.0 * kPi * bt);
  return std::max(4, 2 * static_cast<int>(std::ceil(5.0 * sigma)));
}

std::vector<double> gaussian_taps(const GaussianFilterSpec& spec) {
  if (!(spec.bt > 0.0 && spec.bt <= 1.0)) throw InvalidArgument("gaussian_taps: BT must be in (0, 1]");
  if (spec.samples_per_symbol < 1) throw InvalidArgument("gaussian_taps: samples_per_symbol must be >= 1");
  const int span = spec.span_symbols > 0 ? spec.span_symbols : gaussian_span_symbols(spec.bt);
  const double sigma = std::sqrt(std::numbers::ln2) / (2.0 * kPi * spec.bt);
  const int half = span * spec.samples_per_symbol / 2;
  std::vector<double> taps;
  taps.reserve(static_cast<std::size_t>(2 * half + 1));
  double sum = 0.0;
  for (int n = -half; n <= half; ++n) {
    const double t = static_cast<double>(n) / spec.samples_per_symbol;
    taps.push_back(std::exp(-t * t / (2.0 * sigma * sigma)));
    sum += taps.back();
  }
  for (double& t : taps) t /= sum;
  return taps;
}

Waveform gen_linear_mod(int class_index, RngStream& rng, double alpha, std::size_t length) {
  require_length(length);
  const ConstellationTable table = build_constellation(class_index);
  const std::vector<double> taps = rrc_taps({alpha, kLinearSamplesPerSymbol, kRrcSpanSymbols});
  const std::size_t sps = kLinearSamplesPerSymbol;
  const std::size_t half = taps.size() / 2;

  // Enough leading symbols that the first output sample sees a full filter,
  // and the first visible symbol peaks exactly at sample 0.
  const std::size_t lead = ceil_div(half, sps);
  const std::size_t visible = ceil_div(length, sps);
  const std::size_t tail = ceil_div(half, sps);
  const std::size_t num_symbols = lead + visible + tail;

  std::vector<std::uint32_t> indices(num_symbols);
  const auto m = static_cast<std::int64_t>(table.points.size());
  for (auto& idx : indices) idx = static_cast<std::uint32_t>(rng.uniform_int(0, m - 1));

  // Output sample m equals full-convolution index m + start, where the
  // upsampled train has symbol k at k * sps.
  const std::size_t start = lead * sps + half;
  ComplexFrame frame(length);
  for (std::size_t n = 0; n < length; ++n) {
    const std::size_t full = n + start;  // symbol k contributes taps[full - k*sps]
    const std::size_t k_hi = std::min(full / sps, num_symbols - 1);
    const std::size_t k_lo = full >= taps.size() - 1 ? ceil_div(full - (taps.size() - 1), sps) : 0;
    Sample acc{};
    for (std::size_t k = k_lo; k <= k_hi; ++k) acc += table.points[indices[k]] * taps[full - k * sps];
    frame[n] = acc;
  }

  Waveform out;
  out.frame = normalize_unit_power(frame);
  out.descriptor = describe(class_index, static_cast<double>(sps));
  out.symbols.assign(indices.begin() + static_cast<std::ptrdiff_t>(lead),
                     indices.begin() + static_cast<std::ptrdiff_t>(lead + visible));
  return out;
}

FskSpec FskSpec::for_class(int class_index) {
  const ClassInfo& info = class_info(class_index);
  if (info.family != Family::kFsk) throw InvalidArgument("class " + std::string(info.name) + " is not FSK");
  FskSpec spec;
  spec.order = info.order;
  spec.variant = info.fsk_variant;
  return spec;
}

double tone_frequency(const FskSpec& spec, int k) {
  return spec.modulation_index() * static_cast<double>(2 * k - spec.order + 1) /
         (static_cast<double>(spec.order) * spec.samples_per_symbol());
}

Waveform gen_fsk(const FskSpec& spec, RngStream& rng, std::size_t length) {
  require_length(length);
  if (spec.order < 2) throw InvalidArgument("gen_fsk: order must be >= 2");
  const auto sps = static_cast<std::size_t>(spec.samples_per_symbol());

  std::vector<double> taps;
  if (spec.gaussian()) taps = gaussian_taps({spec.bt, spec.samples_per_symbol(), 0});
  const std::size_t half = taps.empty() ? 0 : taps.size() / 2;
  const std::size_t lead = ceil_div(half, sps);
  const std::size_t visible = ceil_div(length, sps);
  const std::size_t num_symbols = lead + visible + lead;

  std::vector<std::uint32_t> tones(num_symbols);
  for (auto& t : tones) t = static_cast<std::uint32_t>(rng.uniform_int(0, spec.order - 1));

  std::vector<double> freq(num_symbols * sps);
  for (std::size_t k = 0; k < num_symbols; ++k) {
    const double f = tone_frequency(spec, static_cast<int>(tones[k]));
    std::fill_n(freq.begin() + static_cast<std::ptrdiff_t>(k * sps), sps, f);
  }
  if (!taps.empty()) freq = smooth_same(freq, taps);

  ComplexFrame frame(length);
  const std::size_t start = lead * sps;
  double theta = 0.0;
  for (std::size_t n = 0; n < start + length; ++n) {
    theta = std::remainder(theta + 2.0 * kPi * freq[n], 2.0 * kPi);
    if (n >= start) frame[n - start] = {std::cos(theta), std::sin(theta)};
  }

  Waveform out;
  out.frame = normalize_unit_power(frame);
  out.descriptor = describe(0, static_cast<double>(sps));
  out.symbols.assign(tones.begin() + static_cast<std::ptrdiff_t>(lead),
                     tones.begin() + static_cast<std::ptrdiff_t>(lead + visible));
  return out;
}

std::size_t OfdmSpec::cp_length() const noexcept {
  return static_cast<std::size_t>(std::lround(cp_fraction * static_cast<double>(fft_size())));
}

namespace {

std::size_t ofdm_guard(const OfdmSpec& spec) {
  switch (spec.edge) {
    case EdgeTreatment::kLowpass: return kOfdmLowpassTaps / 2;
    case EdgeTreatment::kWindow: return spec.window_length();
    case EdgeTreatment::kNone: return 0;
  }
  return 0;
}

void validate(const OfdmSpec& spec) {
  if (spec.num_subcarriers < 2 || spec.num_subcarriers % 2 != 0) {
    throw InvalidArgument("OFDM subcarrier count must be even and >= 2");
  }
  if (!(spec.cp_fraction >= 0.0 && spec.cp_fraction < 1.0)) {
    throw InvalidArgument("OFDM cyclic prefix fraction must be in [0, 1)");
  }
}

}  // namespace

std::size_t ofdm_symbols_needed(const OfdmSpec& spec, std::size_t length) {
  validate(spec);
  return ceil_div(length + 2 * ofdm_guard(spec), spec.symbol_length());
}

OfdmGrid draw_ofdm_grid(const OfdmSpec& spec, std::size_t num_symbols, RngStream& rng) {
  validate(spec);
  const auto n = static_cast<std::size_t>(spec.num_subcarriers);
  const std::size_t dc = n / 2;
  const auto draw_mod = [&rng] {
    return kSubcarrierMods[static_cast<std::size_t>(rng.uniform_int(0, kSubcarrierMods.size() - 1))];
  };
  std::vector<SubcarrierMod> mods(n);
  if (spec.per_subcarrier_random) {
    for (auto& m : mods) m = draw_mod();
  } else {
    std::fill(mods.begin(), mods.end(), draw_mod());
  }

  OfdmGrid grid(num_symbols, std::vector<Sample>(n));
  for (auto& row : grid) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == dc && !spec.dc_present) continue;
      const ConstellationTable& table = subcarrier_constellation(mods[i]);
      const auto m = static_cast<std::int64_t>(table.points.size());
      row[i] = table.points[static_cast<std::size_t>(rng.uniform_int(0, m - 1))];
    }
  }
  return grid;
}

std::vector<Sample> ofdm_symbol_body(const OfdmSpec& spec, std::span<const Sample> subcarriers) {
  const auto n = static_cast<std::size_t>(spec.num_subcarriers);
  if (subcarriers.size() != n) throw InvalidArgument("OFDM row has the wrong subcarrier count");
  const std::size_t size = spec.fft_size();
  std::vector<Sample> bins(size);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == n / 2 && !spec.dc_present) continue;
    // Subcarrier i sits at bin (i - N/2) mod 2N.
    bins[(i + size - n / 2) % size] = subcarriers[i];
  }
  return dsp::ifft(bins);
}

ComplexFrame ofdm_modulate(const OfdmSpec& spec, const OfdmGrid& grid, std::size_t length) {
  require_length(length);
  const std::size_t needed = ofdm_symbols_needed(spec, length);
  if (grid.size() < needed) throw InvalidArgument("OFDM grid too short for the requested length");

  const std::size_t size = spec.fft_size();
  const std::size_t cp = spec.cp_length();
  const std::size_t sym_len = spec.symbol_length();
  const std::size_t taper = spec.edge == EdgeTreatment::kWindow ? spec.window_length() : 0;

  std::vector<double> rise(taper);
  for (std::size_t i = 0; i < taper; ++i) {
    rise[i] = 0.5 - 0.5 * std::cos(kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(taper));
  }

  ComplexFrame stream(needed * sym_len + taper);
  for (std::size_t s = 0; s < needed; ++s) {
    const std::vector<Sample> body = ofdm_symbol_body(spec, grid[s]);
    // Extended symbol: [cyclic prefix | body | cyclic suffix of `taper` samples].
    const std::size_t ext_len = sym_len + taper;
    for (std::size_t i = 0; i < ext_len; ++i) {
      Sample v = body[(i + size - cp) % size];
      if (i < taper) v *= rise[i];
      if (i >= sym_len) v *= rise[taper - 1 - (i - sym_len)];
      stream[s * sym_len + i] += v;
    }
  }

  if (spec.edge == EdgeTreatment::kLowpass) {
    const std::vector<double> lp = dsp::windowed_sinc_lowpass(kOfdmLowpassCutoff, kOfdmLowpassTaps);
    stream = dsp::filter_same(stream, lp);
  }

  const std::size_t guard = ofdm_guard(spec);
  ComplexFrame frame(length);
  for (std::size_t n = 0; n < length; ++n) frame[n] = stream[n + guard];
  return frame;
}

OfdmSpec draw_clean_ofdm_spec(int num_subcarriers, RngStream& rng) {
  OfdmSpec spec;
  spec.num_subcarriers = num_subcarriers;
  spec.per_subcarrier_random = rng.bernoulli(0.5);
  spec.cp_fraction = rng.bernoulli(0.5) ? 0.125 : 0.25;
  spec.dc_present = rng.bernoulli(0.5);
  spec.edge = rng.bernoulli(0.5) ? EdgeTreatment::kLowpass : EdgeTreatment::kWindow;
  return spec;
}

Waveform gen_ofdm(const OfdmSpec& spec, RngStream& rng, std::size_t length) {
  const OfdmGrid grid = draw_ofdm_grid(spec, ofdm_symbols_needed(spec, length), rng);
  Waveform out;
  out.frame = normalize_unit_power(ofdm_modulate(spec, grid, length));
  // Half-band occupancy stands in for 2 samples per symbol.
  out.descriptor.samples_per_symbol = 2.0;
  out.descriptor.family = Family::kOfdm;
  return out;
}

Waveform gen_clean(int class_index, RngStream& rng, std::size_t length) {
  const ClassInfo& info = class_info(class_index);
  Waveform out;
  if (is_linear(info.family)) {
    out = gen_linear_mod(class_index, rng, kCleanRrcAlpha, length);
  } else if (info.family == Family::kFsk) {
    out = gen_fsk(FskSpec::for_class(class_index), rng, length);
  } else {
    out = gen_ofdm(draw_clean_ofdm_spec(info.order, rng), rng, length);
  }
  out.descriptor = describe(class_index, out.descriptor.samples_per_symbol);
  return out;
}

}  // namespace sigforge::mod
