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

#include "sigforge/shards.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "json_codec.hpp"
#include "sigforge/error.hpp"
#include "sigforge/sha256.hpp"
#include "sigforge/thread_pool.hpp"

namespace sigforge::data {
namespace fs = std::filesystem;
namespace {

using detail::Json;

constexpr std::size_t kChunk = 256;

std::string shard_stem(std::size_t s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "shard-%05zu", s);
  return buf;
}

bool is_dataset_file(const fs::path& p) {
  const std::string name = p.filename().string();
  if (name == kManifestName) return true;
  if (name.rfind("shard-", 0) != 0) return false;
  return name.ends_with(".iq") || name.ends_with(".meta.jsonl");
}

Json profile_to_json(const impair::ImpairmentProfile& p) {
  return {
      {"phase_shift_prob", p.phase_shift_prob},   {"phase_shift_max", p.phase_shift_max},
      {"time_shift_prob", p.time_shift_prob},     {"time_shift_max", p.time_shift_max},
      {"freq_shift_prob", p.freq_shift_prob},     {"freq_shift_max", p.freq_shift_max},
      {"rayleigh_prob", p.rayleigh_prob},         {"rayleigh_min_taps", p.rayleigh_min_taps},
      {"rayleigh_max_taps", p.rayleigh_max_taps}, {"iq_imbalance_prob", p.iq_imbalance_prob},
      {"iq_amp_db_max", p.iq_amp_db_max},         {"iq_phase_max", p.iq_phase_max},
      {"iq_dc_max", p.iq_dc_max},                 {"resample_prob", p.resample_prob},
      {"resample_min", p.resample_min},           {"resample_max", p.resample_max},
      {"esn0_min_db", detail::finite_or_null(p.esn0_min_db)},
      {"esn0_max_db", detail::finite_or_null(p.esn0_max_db)},
      {"random_pulse_shape", p.random_pulse_shape},
  };
}

impair::ImpairmentProfile profile_from_json(const Json& j) {
  impair::ImpairmentProfile p;
  p.phase_shift_prob = j.at("phase_shift_prob").get<double>();
  p.phase_shift_max = j.at("phase_shift_max").get<double>();
  p.time_shift_prob = j.at("time_shift_prob").get<double>();
  p.time_shift_max = j.at("time_shift_max").get<int>();
  p.freq_shift_prob = j.at("freq_shift_prob").get<double>();
  p.freq_shift_max = j.at("freq_shift_max").get<double>();
  p.rayleigh_prob = j.at("rayleigh_prob").get<double>();
  p.rayleigh_min_taps = j.at("rayleigh_min_taps").get<int>();
  p.rayleigh_max_taps = j.at("rayleigh_max_taps").get<int>();
  p.iq_imbalance_prob = j.at("iq_imbalance_prob").get<double>();
  p.iq_amp_db_max = j.at("iq_amp_db_max").get<double>();
  p.iq_phase_max = j.at("iq_phase_max").get<double>();
  p.iq_dc_max = j.at("iq_dc_max").get<double>();
  p.resample_prob = j.at("resample_prob").get<double>();
  p.resample_min = j.at("resample_min").get<double>();
  p.resample_max = j.at("resample_max").get<double>();
  p.esn0_min_db = detail::number_or_inf(j.at("esn0_min_db"));
  p.esn0_max_db = detail::number_or_inf(j.at("esn0_max_db"));
  p.random_pulse_shape = j.at("random_pulse_shape").get<bool>();
  return p;
}

void write_all(std::ofstream& out, const std::string& bytes, const fs::path& path) {
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void hash_file(Sha256& h, const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("missing shard file " + path.string());
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
}

void prepare_directory(const fs::path& dir, bool force) {
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec)) throw IoError(dir.string() + " exists and is not a directory");
    if (!fs::is_empty(dir, ec)) {
      if (!force) throw IoError(dir.string() + " is not empty (use force to overwrite)");
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && is_dataset_file(entry.path())) fs::remove(entry.path());
      }
    }
  }
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

std::uint64_t DatasetManifest::total() const noexcept {
  std::uint64_t n = 0;
  for (const ShardInfo& s : shards) n += s.count;
  return n;
}

std::string manifest_to_json(const DatasetManifest& m) {
  Json shards = Json::array();
  for (const ShardInfo& s : m.shards) {
    shards.push_back({{"iq_file", s.iq_file},
                      {"meta_file", s.meta_file},
                      {"first_index", s.first_index},
                      {"count", s.count},
                      {"iq_sha256", s.iq_sha256},
                      {"meta_sha256", s.meta_sha256}});
  }
  Json counts = Json::object();
  for (int c = 0; c < kNumClasses; ++c) counts[std::string(class_info(c).name)] = m.class_counts[static_cast<std::size_t>(c)];
  Json config = {{"variant", std::string(to_string(m.config.variant))},
                 {"count", m.config.count},
                 {"seed", m.config.seed},
                 {"frame_len", m.config.frame_len},
                 {"profile", profile_to_json(m.config.profile)}};
  Json j = {{"format_version", m.format_version},
            {"config", config},
            {"shard_size", m.shard_size},
            {"sample_format", "f32le-interleaved"},
            {"total", m.total()},
            {"shards", shards},
            {"class_counts", counts},
            {"digest", m.digest}};
  return j.dump(2) + "\n";
}

DatasetManifest manifest_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    DatasetManifest m;
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kFormatVersion) {
      throw FormatError("unsupported format version " + std::to_string(m.format_version));
    }
    const Json& c = j.at("config");
    const auto variant = parse_variant(c.at("variant").get<std::string>());
    if (!variant) throw FormatError("unknown variant " + c.at("variant").dump());
    m.config.variant = *variant;
    m.config.count = c.at("count").get<std::uint64_t>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.frame_len = c.at("frame_len").get<std::size_t>();
    m.config.profile = profile_from_json(c.at("profile"));
    m.shard_size = j.at("shard_size").get<std::size_t>();
    for (const Json& s : j.at("shards")) {
      m.shards.push_back({s.at("iq_file").get<std::string>(), s.at("meta_file").get<std::string>(),
                          s.at("first_index").get<std::uint64_t>(), s.at("count").get<std::uint64_t>(),
                          s.at("iq_sha256").get<std::string>(), s.at("meta_sha256").get<std::string>()});
    }
    const Json& counts = j.at("class_counts");
    for (int k = 0; k < kNumClasses; ++k) {
      m.class_counts[static_cast<std::size_t>(k)] = counts.at(std::string(class_info(k).name)).get<std::uint64_t>();
    }
    m.digest = j.at("digest").get<std::string>();
    return m;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  }
}

DatasetManifest write_shards(const DatasetConfig& config, const fs::path& dir, const WriteOptions& options) {
  config.validate();
  if (options.shard_size == 0) throw InvalidArgument("shard_size must be positive");
  prepare_directory(dir, options.force);
  ThreadPool pool(resolve_workers(options.workers));

  DatasetManifest manifest;
  manifest.config = config;
  manifest.shard_size = options.shard_size;
  Sha256 overall;
  std::uint64_t written = 0;

  for (std::size_t s = 0; written < config.count; ++s) {
    ShardInfo info;
    info.iq_file = shard_stem(s) + ".iq";
    info.meta_file = shard_stem(s) + ".meta.jsonl";
    info.first_index = written;
    info.count = std::min<std::uint64_t>(options.shard_size, config.count - written);

    const fs::path iq_path = dir / info.iq_file;
    std::ofstream iq(iq_path, std::ios::binary | std::ios::trunc);
    if (!iq) throw IoError("cannot create " + iq_path.string());
    Sha256 iq_hash;
    std::string meta_text;

    for (std::uint64_t done = 0; done < info.count;) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, info.count - done));
      std::vector<std::string> frames(n);
      std::vector<std::string> metas(n);
      std::vector<int> classes(n);
      const std::uint64_t base = info.first_index + done;
      pool.parallel_for(n, [&](std::size_t i) {
        const Example ex = generate_example(plan_item(config, base + i), config);
        append_f32le(frames[i], to_f32(ex.frame));
        metas[i] = meta_to_json(ex.meta);
        classes[i] = ex.meta.class_index;
      });
      for (std::size_t i = 0; i < n; ++i) {
        write_all(iq, frames[i], iq_path);
        iq_hash.update(frames[i]);
        overall.update(frames[i]);
        meta_text += metas[i];
        meta_text += '\n';
        ++manifest.class_counts[static_cast<std::size_t>(classes[i])];
      }
      done += n;
      written += n;
      if (options.progress) options.progress(written);
    }
    iq.close();
    if (!iq) throw IoError("write failed: " + iq_path.string());

    const fs::path meta_path = dir / info.meta_file;
    std::ofstream meta(meta_path, std::ios::binary | std::ios::trunc);
    if (!meta) throw IoError("cannot create " + meta_path.string());
    write_all(meta, meta_text, meta_path);
    meta.close();
    overall.update(meta_text);
    info.iq_sha256 = iq_hash.hex_digest();
    info.meta_sha256 = Sha256::of(meta_text);
    manifest.shards.push_back(std::move(info));
  }
  manifest.digest = overall.hex_digest();

  const fs::path manifest_path = dir / kManifestName;
  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + manifest_path.string());
  write_all(out, manifest_to_json(manifest), manifest_path);
  return manifest;
}

std::string compute_dataset_digest(const fs::path& dir, const DatasetManifest& manifest) {
  Sha256 h;
  for (const ShardInfo& s : manifest.shards) {
    hash_file(h, dir / s.iq_file);
    hash_file(h, dir / s.meta_file);
  }
  return h.hex_digest();
}

DatasetReader::DatasetReader(const fs::path& dir, bool verify_on_open) : dir_(dir) {
  const fs::path path = dir / kManifestName;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("manifest missing: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  manifest_ = manifest_from_json(ss.str());
  cache_.resize(manifest_.shards.size());
  if (verify_on_open) verify();
}

void DatasetReader::verify() const {
  for (const ShardInfo& s : manifest_.shards) {
    if (Sha256::of_file(dir_ / s.iq_file) != s.iq_sha256) throw DigestError("digest mismatch: " + s.iq_file);
    if (Sha256::of_file(dir_ / s.meta_file) != s.meta_sha256) throw DigestError("digest mismatch: " + s.meta_file);
  }
  if (compute_dataset_digest(dir_, manifest_) != manifest_.digest) throw DigestError("dataset digest mismatch");
}

DatasetReader::ShardCache& DatasetReader::shard(std::size_t s) {
  ShardCache& c = cache_[s];
  if (c.loaded) return c;
  const ShardInfo& info = manifest_.shards[s];
  c.iq.open(dir_ / info.iq_file, std::ios::binary);
  if (!c.iq) throw IoError("missing shard file " + info.iq_file);
  std::ifstream meta(dir_ / info.meta_file, std::ios::binary);
  if (!meta) throw IoError("missing shard file " + info.meta_file);
  for (std::string line; std::getline(meta, line);) c.meta_lines.push_back(std::move(line));
  if (c.meta_lines.size() != info.count) throw FormatError(info.meta_file + " has the wrong line count");
  c.loaded = true;
  return c;
}

Example DatasetReader::at(std::uint64_t index) {
  if (index >= size()) throw InvalidArgument("example index " + std::to_string(index) + " out of range");
  const auto it = std::upper_bound(manifest_.shards.begin(), manifest_.shards.end(), index,
                                   [](std::uint64_t i, const ShardInfo& s) { return i < s.first_index; });
  const auto s = static_cast<std::size_t>(it - manifest_.shards.begin()) - 1;
  ShardCache& c = shard(s);
  const std::uint64_t local = index - manifest_.shards[s].first_index;
  const std::size_t len = manifest_.config.frame_len;
  std::vector<float> values(2 * len);
  c.iq.clear();
  c.iq.seekg(static_cast<std::streamoff>(local * len * 8));
  c.iq.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * 4));
  if (!c.iq) throw IoError("short read in " + manifest_.shards[s].iq_file);
  if constexpr (std::endian::native == std::endian::big) {
    for (float& v : values) {
      auto b = std::bit_cast<std::uint32_t>(v);
      b = (b >> 24) | ((b >> 8) & 0xff00u) | ((b << 8) & 0xff0000u) | (b << 24);
      v = std::bit_cast<float>(b);
    }
  }
  Example ex;
  ex.frame = from_f32(values.data(), len);
  ex.meta = meta_from_json(c.meta_lines[local]);
  if (ex.meta.index != index) throw FormatError("metadata index mismatch at " + std::to_string(index));
  return ex;
}

void DatasetReader::for_each(const std::function<void(const Example&)>& fn) {
  for (std::uint64_t i = 0; i < size(); ++i) fn(at(i));
}

}  // namespace sigforge::data
