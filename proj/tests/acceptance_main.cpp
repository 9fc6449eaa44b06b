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

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracle_values.hpp"
#include "sigforge/augmentations.hpp"
#include "sigforge/classes.hpp"
#include "sigforge/dataset.hpp"
#include "sigforge/impairments.hpp"
#include "sigforge/measurement.hpp"
#include "sigforge/modulators.hpp"
#include "sigforge/server.hpp"
#include "sigforge/shards.hpp"
#include "sigforge/thread_pool.hpp"
#include "test_support.hpp"

namespace {

using namespace sigforge;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[" << what << "] ";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int run_cli(const std::string& args, std::string* out) {
  const std::string cmd = std::string(SIGFORGE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return -1;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out->append(buf, n);
  const int raw = ::pclose(pipe);
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

bool same_tree(const fs::path& a, const fs::path& b) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
  std::size_t count_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++count_b;
  if (names.size() != count_b) return false;
  for (const std::string& n : names) {
    if (testing::read_file(a / n) != testing::read_file(b / n)) return false;
  }
  return true;
}

// 1. Determinism of the generate command.
Outcome criterion_determinism(const testing::TempDir& tmp) {
  Outcome o;
  const auto t0 = Clock::now();
  std::string d1, d2, d3;
  const std::string base = "generate --variant impaired-train --count 1060 --seed 7 --quiet ";
  o.require(run_cli(base + "--out " + (tmp.path() / "run1").string(), &d1) == 0, "run1");
  o.require(run_cli(base + "--out " + (tmp.path() / "run2").string(), &d2) == 0, "run2");
  const double first_two = seconds_since(t0);
  std::string w1, w8;
  o.require(run_cli(base + "--workers 1 --out " + (tmp.path() / "w1").string(), &w1) == 0, "workers1");
  o.require(run_cli(base + "--workers 8 --out " + (tmp.path() / "w8").string(), &w8) == 0, "workers8");
  o.require(!d1.empty() && d1 == d2 && d1 == w1 && d1 == w8, "digest mismatch");
  o.require(same_tree(tmp.path() / "run1", tmp.path() / "run2"), "run1 vs run2 bytes");
  o.require(same_tree(tmp.path() / "w1", tmp.path() / "w8"), "workers 1 vs 8 bytes");
  o.require(same_tree(tmp.path() / "run1", tmp.path() / "w1"), "run vs workers bytes");
  o.require(first_two / 2.0 < 120.0, "runtime");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "4 runs identical, %.1f s per run", first_two / 2.0);
  o.detail << buf;
  return o;
}

// 2. Class table conformance and balance of the 1060-example set.
Outcome criterion_classes(const testing::TempDir& tmp) {
  Outcome o;
  o.require(class_table().size() == 53, "table size");
  std::array<const testing::ExpectedClass*, kNumClasses> by_index{};
  for (const testing::ExpectedClass& e : testing::kExpectedClasses) {
    by_index[static_cast<std::size_t>(e.index)] = &e;
    const ClassInfo& info = class_info(e.index);
    o.require(info.name == e.name && to_string(info.family) == e.family, "table row " + std::string(e.name));
  }
  std::array<int, kNumClasses> seen{};
  try {
    data::DatasetReader reader(tmp.path() / "run1");
    reader.for_each([&](const data::Example& ex) {
      const auto& want = *by_index[static_cast<std::size_t>(ex.meta.class_index)];
      if (ex.meta.class_name != want.name || to_string(ex.meta.family) != want.family) {
        o.require(false, "meta " + std::to_string(ex.meta.index));
      }
      ++seen[static_cast<std::size_t>(ex.meta.class_index)];
    });
  } catch (const std::exception& e) {
    o.require(false, e.what());
  }
  for (int n : seen) o.require(n == 20, "balance");
  o.detail << "53 classes match, 20 examples each";
  return o;
}

double ks_uniform_p_value(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = std::clamp((xs[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return std::clamp(p, 0.0, 1.0);
}

// 3. Es/N0 calibration over 530 impaired examples.
Outcome criterion_snr() {
  Outcome o;
  data::DatasetConfig c;
  c.variant = data::Variant::kImpairedVal;
  c.seed = 2026;
  c.count = 530;
  std::vector<double> targets(c.count);
  std::vector<double> errors(c.count);
  ThreadPool pool(resolve_workers(std::nullopt));
  pool.parallel_for(c.count, [&](std::size_t i) {
    const data::Example ex = data::generate_example(data::plan_item(c, i), c);
    RngStream rng(ex.meta.rng_key);
    const impair::ShapedSource src = impair::gen_impaired_source(ex.meta.class_index, rng, ex.meta.frame_len);
    impair::ChainTrace trace;
    const ComplexFrame again = impair::replay(ex.meta.record, src.waveform.frame, &trace);
    ComplexFrame injected(again.size());
    for (std::size_t n = 0; n < again.size(); ++n) injected[n] = ex.frame[n] - trace.pre_noise[n];
    const double measured = measure::measure_esn0(trace.pre_noise, injected, trace.samples_per_symbol);
    targets[i] = ex.meta.snr_db.value_or(-1e9);
    errors[i] = std::abs(measured - targets[i]);
  });
  const double worst = *std::max_element(errors.begin(), errors.end());
  const auto [lo, hi] = std::minmax_element(targets.begin(), targets.end());
  const double p = ks_uniform_p_value(targets, -2.0, 30.0);
  o.require(worst <= 0.2, "calibration");
  o.require(*lo >= -2.0 && *hi <= 30.0, "range");
  o.require(p > 0.01, "KS");
  char buf[160];
  std::snprintf(buf, sizeof(buf), "worst |error| %.2e dB, targets in [%.2f, %.2f], KS p %.3f", worst, *lo, *hi, p);
  o.detail << buf;
  return o;
}

// 4. Impairment gate rates over 10k impaired examples.
Outcome criterion_gates() {
  Outcome o;
  data::DatasetConfig c;
  c.variant = data::Variant::kImpairedTrain;
  c.seed = 44;
  c.count = 10000;
  const ImpairmentKind kinds[] = {ImpairmentKind::kPhaseShift, ImpairmentKind::kTimeShift,
                                  ImpairmentKind::kFreqShift,  ImpairmentKind::kRayleigh,
                                  ImpairmentKind::kIqImbalance, ImpairmentKind::kResample};
  const double want[] = {0.9, 0.9, 0.7, 0.5, 0.9, 0.5};
  std::vector<std::array<char, 6>> hits(c.count);
  ThreadPool pool(resolve_workers(std::nullopt));
  pool.parallel_for(c.count, [&](std::size_t i) {
    const data::Example ex = data::generate_example(data::plan_item(c, i), c);
    for (std::size_t k = 0; k < 6; ++k) hits[i][k] = ex.meta.record.contains(kinds[k]) ? 1 : 0;
  });
  for (std::size_t k = 0; k < 6; ++k) {
    double rate = 0.0;
    for (const auto& h : hits) rate += h[k];
    rate /= static_cast<double>(c.count);
    o.require(std::abs(rate - want[k]) <= 0.02, std::string(to_string(kinds[k])));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s %.3f%s", std::string(to_string(kinds[k])).c_str(), rate, k < 5 ? ", " : "");
    o.detail << buf;
  }
  return o;
}

// 5. Modulation correctness.
Outcome criterion_modulation() {
  Outcome o;
  const std::vector<double> mf(std::begin(oracle::kRrcAlpha035Sps2Span11), std::end(oracle::kRrcAlpha035Sps2Span11));
  int linear = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    if (!is_linear(class_info(c).family)) continue;
    ++linear;
    RngStream rng = derive_stream(5, static_cast<std::uint64_t>(c));
    const mod::Waveform w = mod::gen_linear_mod(c, rng);
    std::size_t checked = 0;
    const std::size_t errs =
        testing::count_symbol_errors(w, mf, mod::build_constellation(c).points, mod::kRrcSpanSymbols, &checked);
    o.require(errs == 0 && checked > 0, "demod " + std::string(class_info(c).name));
  }
  o.require(linear == 25, "linear class count");
  double worst_env = 0.0;
  for (int c = 0; c < kNumClasses; ++c) {
    if (class_info(c).family != Family::kFsk) continue;
    RngStream rng = derive_stream(6, static_cast<std::uint64_t>(c));
    worst_env = std::max(worst_env, measure::envelope_constancy(mod::gen_clean(c, rng).frame));
  }
  o.require(worst_env <= 1e-9, "envelope");

  double worst_ofdm = 0.0;
  bool cp_ok = true;
  for (int n : {64, 72, 128, 180}) {
    mod::OfdmSpec spec;
    spec.num_subcarriers = n;
    spec.edge = mod::EdgeTreatment::kNone;
    spec.per_subcarrier_random = true;
    RngStream rng(static_cast<std::uint64_t>(n));
    const std::size_t len = 4096;
    const mod::OfdmGrid grid = mod::draw_ofdm_grid(spec, mod::ofdm_symbols_needed(spec, len), rng);
    const ComplexFrame frame = mod::ofdm_modulate(spec, grid, len);
    const std::size_t L = spec.symbol_length();
    const std::size_t size = spec.fft_size();
    for (std::size_t s = 0; (s + 1) * L <= len; ++s) {
      for (std::size_t i = 0; i < spec.cp_length(); ++i) cp_ok = cp_ok && frame[s * L + i] == frame[s * L + size + i];
      if (s >= 3) continue;
      const std::vector<Sample> body(frame.begin() + static_cast<long>(s * L + spec.cp_length()),
                                     frame.begin() + static_cast<long>((s + 1) * L));
      const std::vector<Sample> bins = testing::naive_dft(body);
      for (std::size_t k = 0; k < size; ++k) {
        const std::size_t i = (k + static_cast<std::size_t>(n) / 2) % size;
        const Sample want = i < static_cast<std::size_t>(n) ? grid[s][i] : Sample(0.0);
        worst_ofdm = std::max(worst_ofdm, std::abs(bins[k] - want));
      }
    }
  }
  o.require(cp_ok, "ofdm cp");
  o.require(worst_ofdm <= 1e-6, "ofdm recovery");

  RngStream rng(2);
  const mod::Waveform fsk = mod::gen_clean(*find_class("2FSK"), rng);
  const double n = static_cast<double>(fsk.frame.size());
  const double up = static_cast<double>(testing::peak_bin_signed(fsk.frame, +1));
  const double down = static_cast<double>(testing::peak_bin_signed(fsk.frame, -1));
  o.require(std::abs(up - n / 16) <= 1.0 && std::abs(down + n / 16) <= 1.0, "2fsk peaks");
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "25 linear classes 0 symbol errors, envelope %.1e, OFDM error %.1e, 2FSK peaks %+.0f/%+.0f of %.0f",
                worst_env, worst_ofdm, up, down, n);
  o.detail << buf;
  return o;
}

// 6. Augmentation algebra on 1000 randomized frames.
Outcome criterion_augment() {
  Outcome o;
  int failures = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RngStream rng = derive_stream(0xa6, i);
    ComplexFrame x(128 + i % 200);
    for (Sample& s : x) s = Sample(rng.normal(), rng.normal());
    bool ok = aug::spectral_inversion(aug::spectral_inversion(x)) == x;
    ok = ok && aug::channel_swap(aug::channel_swap(x)) == x;
    ok = ok && aug::amplitude_reversal(aug::amplitude_reversal(x)) == x;
    ok = ok && aug::time_reversal(aug::time_reversal(x, false), false) == x;
    ok = ok && aug::time_reversal(aug::time_reversal(x, true), true) == x;
    const ComplexFrame swapped = aug::channel_swap(x);
    for (std::size_t n = 0; n < x.size(); ++n) ok = ok && swapped[n] == Sample(0.0, 1.0) * std::conj(x[n]);
    ok = ok && swapped == impair::phase_shift(aug::spectral_inversion(x), std::numbers::pi / 2);
    std::vector<std::pair<double, double>> a, b;
    const ComplexFrame shuffled = aug::patch_shuffle(x, rng, 3, 10, 0.5);
    for (const Sample& s : x) a.emplace_back(s.real(), s.imag());
    for (const Sample& s : shuffled) b.emplace_back(s.real(), s.imag());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    ok = ok && a == b;
    if (!ok) ++failures;
  }
  o.require(failures == 0, std::to_string(failures) + " frames failed");
  o.detail << "involutions, j*conj identity and patch_shuffle multiset exact on 1000 frames";
  return o;
}

double median_floor_db(const ComplexFrame& x) {
  const measure::PsdEstimate psd = measure::welch_psd(x);
  std::vector<double> db;
  for (std::size_t k = 0; k < psd.density.size(); ++k) {
    if (std::abs(psd.frequencies[k]) >= 0.4) db.push_back(psd.density_db[k]);
  }
  std::sort(db.begin(), db.end());
  return db[db.size() / 2];
}

// 7. Eb/N0 versus Es/N0 noise floors for 1024QAM.
Outcome criterion_ebn0() {
  Outcome o;
  const int cls = *find_class("1024QAM");
  RngStream src(1024);
  const mod::Waveform w = mod::gen_clean(cls, src);
  const double sps = w.descriptor.samples_per_symbol;
  RngStream n1(1), n2(2);
  const ComplexFrame es = impair::add_awgn(w.frame, 10.0, sps, n1);
  const ComplexFrame eb = impair::add_awgn(w.frame, testing::esn0_from_ebn0(10.0, 10), sps, n2);
  const double gap = median_floor_db(es) - median_floor_db(eb);
  o.require(std::abs(gap - 10.0) <= 1.0, "gap");
  char buf[96];
  std::snprintf(buf, sizeof(buf), "noise floor gap %.2f dB (want 10 +/- 1)", gap);
  o.detail << buf;
  return o;
}

// 8. Filter oracles and spectral peak checks.
Outcome criterion_filters() {
  Outcome o;
  double worst = 0.0;
  const auto cmp = [&](const std::vector<double>& got, const double* want, std::size_t n) {
    if (got.size() != n) {
      worst = 1.0;
      return;
    }
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  };
  cmp(mod::rrc_taps({0.35, 2, 11}), oracle::kRrcAlpha035Sps2Span11, std::size(oracle::kRrcAlpha035Sps2Span11));
  cmp(mod::rrc_taps({0.35, 8, 6}), oracle::kRrcAlpha035Sps8Span6, std::size(oracle::kRrcAlpha035Sps8Span6));
  cmp(mod::gaussian_taps({0.35, 2, 4}), oracle::kGaussianBt035Sps2Span4, std::size(oracle::kGaussianBt035Sps2Span4));
  cmp(mod::gaussian_taps({0.35, 8, 4}), oracle::kGaussianBt035Sps8Span4, std::size(oracle::kGaussianBt035Sps8Span4));
  o.require(worst <= 1e-12, "tap oracle");

  const ComplexFrame tone = testing::make_tone(4096, 0.1);
  int worst_bin = 0;
  for (double f : {-0.16, -0.05, 0.03, 0.12}) {
    const long want = std::lround((0.1 + f) * 4096);
    worst_bin = std::max<int>(worst_bin, static_cast<int>(std::abs(testing::peak_bin(impair::freq_shift(tone, f)) - want)));
  }
  for (double rate : {0.75, 0.8, 1.25, 1.5}) {
    const ComplexFrame out = impair::random_resample(tone, rate);
    const std::size_t used = std::min<std::size_t>(4096, static_cast<std::size_t>(4096 * rate));
    const ComplexFrame head(std::vector<Sample>(out.begin(), out.begin() + static_cast<long>(used)));
    const double want = 0.1 / rate * static_cast<double>(used);
    worst_bin = std::max<int>(worst_bin, static_cast<int>(std::ceil(std::abs(testing::peak_bin(head) - want) - 1e-9)));
  }
  o.require(worst_bin <= 1, "peak bins");
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max tap error %.1e, max peak offset %d bin(s)", worst, worst_bin);
  o.detail << buf;
  return o;
}

// 9. Server byte identity and single-core throughput.
Outcome criterion_server() {
  Outcome o;
  net::Server server(net::ServerOptions{"127.0.0.1", 0, std::nullopt});
  server.start();
  const net::BatchRequest req{16, data::Variant::kImpairedTrain, 9, 5000, 4096};
  std::vector<std::string> payloads(3);
  std::vector<std::thread> clients;
  for (std::size_t i = 0; i < 3; ++i) {
    clients.emplace_back([&, i] {
      try {
        net::Client c("127.0.0.1", server.port());
        payloads[i] = c.request_payload(req);
      } catch (const std::exception&) {
        payloads[i].clear();
      }
    });
  }
  for (auto& t : clients) t.join();
  server.stop();
  o.require(!payloads[0].empty() && payloads[0] == payloads[1] && payloads[1] == payloads[2], "client bytes");

  data::DatasetConfig c;
  c.variant = data::Variant::kImpairedTrain;
  c.seed = 3;
  c.count = 400;
  const auto t0 = Clock::now();
  double checksum = 0.0;
  for (std::uint64_t i = 0; i < c.count; ++i) checksum += data::generate_example(data::plan_item(c, i), c).frame[0].real();
  const double rate = static_cast<double>(c.count) / seconds_since(t0);
  o.require(std::isfinite(checksum), "finite");
  o.require(rate >= 100.0, "throughput");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "3 clients identical (%zu bytes), %.0f impaired frames/s on one core",
                payloads[0].size(), rate);
  o.detail << buf;
  return o;
}

}  // namespace

int main() {
  testing::TempDir tmp("acceptance");
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"determinism", [&] { return criterion_determinism(tmp); }},
      {"class_conformance", [&] { return criterion_classes(tmp); }},
      {"snr_calibration", criterion_snr},
      {"impairment_gate_rates", criterion_gates},
      {"modulation_correctness", criterion_modulation},
      {"augmentation_algebra", criterion_augment},
      {"ebn0_vs_esn0", criterion_ebn0},
      {"filter_oracles", criterion_filters},
      {"server", criterion_server},
  };
  int failed = 0;
  int k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << k << " " << name << ": " << o.detail.str() << std::endl;
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
