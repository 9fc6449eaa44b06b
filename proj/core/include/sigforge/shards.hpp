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

#ifndef SIGFORGE_SHARDS_HPP_
#define SIGFORGE_SHARDS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sigforge/dataset.hpp"

namespace sigforge::data {

inline constexpr int kFormatVersion = 1;
inline constexpr std::size_t kDefaultShardSize = 4096;
inline constexpr std::string_view kManifestName = "manifest.json";

struct ShardInfo {
  std::string iq_file;    // shard-NNNNN.iq
  std::string meta_file;  // shard-NNNNN.meta.jsonl
  std::uint64_t first_index = 0;
  std::uint64_t count = 0;
  std::string iq_sha256;
  std::string meta_sha256;
  friend bool operator==(const ShardInfo&, const ShardInfo&) = default;
};

struct DatasetManifest {
  int format_version = kFormatVersion;
  DatasetConfig config;
  std::size_t shard_size = kDefaultShardSize;
  std::vector<ShardInfo> shards;
  std::array<std::uint64_t, kNumClasses> class_counts{};
  // SHA-256 over every shard's .iq bytes then .meta.jsonl bytes, in order.
  std::string digest;

  std::uint64_t total() const noexcept;
};

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(std::string_view text);

struct WriteOptions {
  std::optional<std::size_t> workers;  // resolve_workers() when unset
  bool force = false;                  // replace an existing dataset
  std::size_t shard_size = kDefaultShardSize;
  // Called after each completed chunk with the number of examples written.
  std::function<void(std::uint64_t)> progress;
};

// Generates config.count examples into `dir`. The bytes written depend only
// on the config and shard size. Throws IoError when `dir` is a non-empty
// directory and force is off, or on any write failure.
DatasetManifest write_shards(const DatasetConfig& config, const std::filesystem::path& dir,
                             const WriteOptions& options = {});

// Digest of the shard files in manifest order; throws IoError on missing files.
std::string compute_dataset_digest(const std::filesystem::path& dir, const DatasetManifest& manifest);

// Random and sequential access to a written dataset.
class DatasetReader {
 public:
  // Throws IoError when the manifest is missing, FormatError when it is
  // malformed, DigestError when verification finds a mismatch.
  explicit DatasetReader(const std::filesystem::path& dir, bool verify = true);

  const DatasetManifest& manifest() const noexcept { return manifest_; }
  std::uint64_t size() const noexcept { return manifest_.total(); }

  // Recomputes every shard digest and the dataset digest.
  void verify() const;

  // Stored float32 samples widened to double. Throws InvalidArgument when
  // index is out of range.
  Example at(std::uint64_t index);

  // Visits every example in index order.
  void for_each(const std::function<void(const Example&)>& fn);

 private:
  struct ShardCache {
    std::ifstream iq;
    std::vector<std::string> meta_lines;
    bool loaded = false;
  };
  ShardCache& shard(std::size_t s);

  std::filesystem::path dir_;
  DatasetManifest manifest_;
  std::vector<ShardCache> cache_;
};

}  // namespace sigforge::data

#endif  // SIGFORGE_SHARDS_HPP_
