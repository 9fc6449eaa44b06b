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

// sigforge: generate, inspect, validate and serve synthetic RF datasets.

#include <CLI11.hpp>

#include <pthread.h>

#include <algorithm>
#include <array>
#include <csignal>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sigforge/dsp.hpp"
#include "sigforge/error.hpp"
#include "sigforge/impairments.hpp"
#include "sigforge/measurement.hpp"
#include "sigforge/modulators.hpp"
#include "sigforge/server.hpp"
#include "sigforge/shards.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sigforge;

struct GenerateArgs {
  std::string variant;
  std::uint64_t count = 0;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<std::size_t> workers;
  std::size_t frame_len = kDefaultFrameLength;
  std::size_t shard_size = data::kDefaultShardSize;
  bool force = false;
  bool quiet = false;
};

struct InspectArgs {
  std::string in;
  std::uint64_t index = 0;
  std::string psd;
  std::string spec;
  std::string constellation;
  bool meta = false;
  std::size_t nfft = measure::kDefaultNfft;
};

struct ValidateArgs {
  std::string in;
  std::size_t snr_sample = 64;
  std::optional<std::uint64_t> replay_limit;
};

struct ServeArgs {
  std::uint16_t port = 5353;
  std::string bind = "127.0.0.1";
  std::optional<std::size_t> workers;
};

int run_generate(const GenerateArgs& a) {
  const auto variant = data::parse_variant(a.variant);
  if (!variant) {
    std::cerr << "error: unknown variant '" << a.variant
              << "' (expected clean-train, clean-val, impaired-train or impaired-val)\n";
    return 2;
  }
  data::DatasetConfig config;
  config.variant = *variant;
  config.count = a.count;
  config.seed = a.seed;
  config.frame_len = a.frame_len;
  data::WriteOptions opts;
  opts.workers = a.workers;
  opts.force = a.force;
  opts.shard_size = a.shard_size;
  const data::DatasetManifest m = data::write_shards(config, a.out, opts);
  if (!a.quiet) {
    std::cerr << "wrote " << m.total() << " examples in " << m.shards.size() << " shard(s) to " << a.out << "\n";
  }
  std::cout << m.digest << "\n";
  return 0;
}

// Matched filter then one sample per symbol, for linear classes only.
std::vector<Sample> constellation_points(const data::Example& ex) {
  if (!is_linear(ex.meta.family)) throw InvalidArgument("constellation output needs a linear-modulation class");
  double alpha = mod::kCleanRrcAlpha;
  if (const ImpairmentStep* s = ex.meta.record.find(ImpairmentKind::kRrcPulseShape)) alpha = s->param("alpha");
  ComplexFrame x = ex.frame;
  const double sps = ex.meta.samples_per_symbol;
  if (std::abs(sps - mod::kLinearSamplesPerSymbol) > 1e-12) {
    x = impair::resample(x, mod::kLinearSamplesPerSymbol / sps);
  }
  const std::vector<double> taps = mod::rrc_taps({alpha, mod::kLinearSamplesPerSymbol, mod::kRrcSpanSymbols});
  const ComplexFrame y = dsp::filter_same(x, taps);
  std::vector<Sample> points;
  for (std::size_t n = 0; n < y.size(); n += mod::kLinearSamplesPerSymbol) points.push_back(y[n]);
  return points;
}

int run_inspect(const InspectArgs& a) {
  data::DatasetReader reader(a.in, false);
  if (a.index >= reader.size()) {
    std::cerr << "error: index " << a.index << " out of range (dataset has " << reader.size() << " examples)\n";
    return 2;
  }
  const data::Example ex = reader.at(a.index);
  const bool any_output = !a.psd.empty() || !a.spec.empty() || !a.constellation.empty();
  if (a.meta || !any_output) {
    std::cout << "index " << ex.meta.index << "\nclass " << ex.meta.class_index << " " << ex.meta.class_name
              << "\nfamily " << to_string(ex.meta.family) << "\nsamples_per_symbol "
              << ex.meta.samples_per_symbol << "\nsnr_db ";
    if (ex.meta.snr_db) {
      std::cout << *ex.meta.snr_db;
    } else {
      std::cout << "none";
    }
    std::cout << "\nmean_power " << mean_power(ex.frame) << "\nimpairments " << record_to_json(ex.meta.record)
              << "\n";
  }
  if (!a.psd.empty()) {
    std::ofstream out(a.psd);
    if (!out) throw IoError("cannot write " + a.psd);
    measure::write_psd_csv(measure::welch_psd(ex.frame, a.nfft), out);
  }
  if (!a.spec.empty()) {
    std::ofstream out(a.spec, std::ios::binary);
    if (!out) throw IoError("cannot write " + a.spec);
    measure::write_spectrogram_pgm(measure::spectrogram(ex.frame, a.nfft, a.nfft / 2), out);
  }
  if (!a.constellation.empty()) {
    std::ofstream out(a.constellation);
    if (!out) throw IoError("cannot write " + a.constellation);
    char line[64];
    for (const Sample& p : constellation_points(ex)) {
      std::snprintf(line, sizeof(line), "%.9g,%.9g\n", p.real(), p.imag());
      out << line;
    }
  }
  return 0;
}

class Report {
 public:
  void check(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    failed_ = failed_ || !ok;
  }
  bool failed() const { return failed_; }

 private:
  bool failed_ = false;
};

int run_validate(const ValidateArgs& a) {
  Report report;
  std::optional<data::DatasetReader> reader;
  try {
    reader.emplace(a.in, false);
  } catch (const Error& e) {
    report.check("manifest", false, e.what());
    return 1;
  }
  report.check("manifest", true,
               "format " + std::to_string(reader->manifest().format_version) + ", " +
                   std::string(data::to_string(reader->manifest().config.variant)) + ", " +
                   std::to_string(reader->manifest().shards.size()) + " shard(s)");
  try {
    reader->verify();
    report.check("digest", true, reader->manifest().digest);
  } catch (const Error& e) {
    report.check("digest", false, e.what());
  }

  const data::DatasetManifest& m = reader->manifest();
  std::array<std::uint64_t, kNumClasses> seen{};
  std::uint64_t replay_failures = 0;
  std::uint64_t replayed = 0;
  std::uint64_t envelope_failures = 0;
  std::uint64_t envelope_checked = 0;
  std::uint64_t snr_failures = 0;
  std::uint64_t snr_checked = 0;
  double worst_snr_error = 0.0;
  std::string read_error;
  const std::uint64_t snr_stride = std::max<std::uint64_t>(1, reader->size() / std::max<std::size_t>(1, a.snr_sample));
  try {
    for (std::uint64_t i = 0; i < reader->size(); ++i) {
      const data::Example ex = reader->at(i);
      ++seen[static_cast<std::size_t>(ex.meta.class_index)];
      if (ex.meta.class_index != static_cast<int>(i % kNumClasses)) {
        read_error = "example " + std::to_string(i) + " has class " + std::to_string(ex.meta.class_index);
      }
      if (!a.replay_limit || replayed < *a.replay_limit) {
        ++replayed;
        ComplexFrame again;
        try {
          again = data::regenerate(ex.meta);
        } catch (const Error&) {
          ++replay_failures;
          continue;
        }
        if (data::to_f32(again) != data::to_f32(ex.frame)) ++replay_failures;
      }
      if (ex.meta.impaired && ex.meta.snr_db && i % snr_stride == 0 && snr_checked < a.snr_sample) {
        ++snr_checked;
        RngStream rng(ex.meta.rng_key);
        bool randomize = false;
        for (const ImpairmentStep& s : ex.meta.record.steps) randomize = randomize || is_generation_time(s.kind);
        const impair::ShapedSource src =
            impair::gen_impaired_source(ex.meta.class_index, rng, ex.meta.frame_len, randomize);
        impair::ChainTrace trace;
        impair::replay(ex.meta.record, src.waveform.frame, &trace);
        const double measured = measure::measure_esn0(trace.pre_noise, trace.noise, trace.samples_per_symbol);
        const double err = std::abs(measured - *ex.meta.snr_db);
        worst_snr_error = std::max(worst_snr_error, err);
        const bool in_range = *ex.meta.snr_db >= m.config.profile.esn0_min_db &&
                              *ex.meta.snr_db <= m.config.profile.esn0_max_db;
        if (err > 0.2 || !in_range) ++snr_failures;
      }
      if (!ex.meta.impaired && ex.meta.family == Family::kFsk) {
        ++envelope_checked;
        if (measure::envelope_constancy(ex.frame) > 1e-6) ++envelope_failures;
      }
    }
  } catch (const Error& e) {
    read_error = e.what();
  }
  report.check("read", read_error.empty(), read_error.empty() ? std::to_string(reader->size()) + " examples" : read_error);

  bool balanced = seen == m.class_counts;
  const auto [lo, hi] = std::minmax_element(seen.begin(), seen.end());
  balanced = balanced && *hi - *lo <= 1;
  report.check("class_balance", balanced,
               "per-class counts " + std::to_string(*lo) + ".." + std::to_string(*hi) +
                   (seen == m.class_counts ? ", manifest agrees" : ", manifest disagrees"));
  report.check("replay", replay_failures == 0,
               std::to_string(replayed - replay_failures) + "/" + std::to_string(replayed) + " bit-exact");
  if (data::is_impaired(m.config.variant)) {
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%llu examples, worst |error| %.4f dB",
                  static_cast<unsigned long long>(snr_checked), worst_snr_error);
    report.check("snr_calibration", snr_failures == 0 && snr_checked > 0, detail);
  } else {
    report.check("envelope", envelope_failures == 0,
                 std::to_string(envelope_checked - envelope_failures) + "/" + std::to_string(envelope_checked) +
                     " FSK-family frames constant envelope");
  }
  return report.failed() ? 1 : 0;
}

int run_serve(const ServeArgs& a) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  net::Server server({a.bind, a.port, a.workers});
  server.start();
  std::cerr << "listening on " << a.bind << ":" << server.port() << "\n";
  int sig = 0;
  sigwait(&set, &sig);
  std::cerr << "shutting down\n";
  server.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic RF modulation dataset engine"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a dataset variant into shard files");
  g->add_option("--variant", gen.variant, "clean-train | clean-val | impaired-train | impaired-val")->required();
  g->add_option("--count", gen.count, "Number of examples")->required()->check(CLI::PositiveNumber);
  g->add_option("--out", gen.out, "Output directory")->required();
  g->add_option("--seed", gen.seed, "Dataset seed");
  g->add_option("--workers", gen.workers, "Worker threads (default: SIGFORGE_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
  g->add_option("--frame-len", gen.frame_len, "Samples per example")->check(CLI::PositiveNumber);
  g->add_option("--shard-size", gen.shard_size, "Examples per shard")->check(CLI::PositiveNumber);
  g->add_flag("--force", gen.force, "Overwrite an existing dataset");
  g->add_flag("--quiet", gen.quiet, "Only print the digest");

  InspectArgs ins;
  auto* i = app.add_subcommand("inspect", "Print metadata or export PSD, spectrogram and constellation");
  i->add_option("--in", ins.in, "Dataset directory")->required();
  i->add_option("--index", ins.index, "Example index")->required();
  i->add_option("--psd", ins.psd, "Write Welch PSD as CSV (frequency,dB)");
  i->add_option("--spec", ins.spec, "Write spectrogram as PGM");
  i->add_option("--constellation", ins.constellation, "Write symbol-rate IQ pairs as CSV");
  i->add_flag("--meta", ins.meta, "Print metadata");
  i->add_option("--nfft", ins.nfft, "Transform size")->check(CLI::PositiveNumber);

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "Check digests, balance, replay, SNR and envelopes");
  v->add_option("dir,--in", val.in, "Dataset directory")->required();
  v->add_option("--snr-sample", val.snr_sample, "Impaired examples checked for Es/N0 calibration");
  v->add_option("--replay-limit", val.replay_limit, "Replay only the first N examples");

  ServeArgs srv;
  auto* s = app.add_subcommand("serve", "Serve generated batches over TCP");
  s->add_option("--port", srv.port, "TCP port (0 picks one)");
  s->add_option("--bind", srv.bind, "IPv4 address to bind");
  s->add_option("--workers", srv.workers, "Generation threads")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*g) return run_generate(gen);
    if (*i) return run_inspect(ins);
    if (*v) return run_validate(val);
    if (*s) return run_serve(srv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
