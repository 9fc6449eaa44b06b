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

#ifndef SIGFORGE_DATASET_HPP_
#define SIGFORGE_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigforge/classes.hpp"
#include "sigforge/frame.hpp"
#include "sigforge/impairments.hpp"
#include "sigforge/record.hpp"
#include "sigforge/rng.hpp"

namespace sigforge::data {

enum class Variant : std::uint8_t { kCleanTrain, kCleanVal, kImpairedTrain, kImpairedVal };

std::string_view to_string(Variant v) noexcept;  // "clean-train", ...
std::optional<Variant> parse_variant(std::string_view text) noexcept;
constexpr bool is_impaired(Variant v) noexcept {
  return v == Variant::kImpairedTrain || v == Variant::kImpairedVal;
}
// Full-scale example counts: 1.06M (1M rounded up to a whole number per
// class), 106k, 5.3M and 106k.
std::uint64_t full_scale_count(Variant v) noexcept;

struct DatasetConfig {
  Variant variant = Variant::kCleanTrain;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::size_t frame_len = kDefaultFrameLength;
  impair::ImpairmentProfile profile = impair::ImpairmentProfile::standard();

  // Throws InvalidArgument on a zero frame length or invalid profile.
  void validate() const;
};

struct PlanItem {
  std::uint64_t index = 0;
  int class_index = 0;
  RngStream rng{0};
};

// Class index mod 53, stream derive_stream(seed, index).
PlanItem plan_item(const DatasetConfig& config, std::uint64_t index);
std::vector<PlanItem> plan(const DatasetConfig& config, std::uint64_t begin, std::uint64_t end);

struct ExampleMeta {
  std::uint64_t index = 0;
  int class_index = 0;
  std::string class_name;
  Family family = Family::kAsk;
  double samples_per_symbol = 0.0;
  std::optional<double> snr_db;
  ImpairmentRecord record;  // empty for clean variants
  std::uint64_t rng_key = 0;
  std::size_t frame_len = 0;
  bool impaired = false;

  friend bool operator==(const ExampleMeta&, const ExampleMeta&) = default;
};

struct Example {
  ComplexFrame frame;
  ExampleMeta meta;
};

// Pure function of (item, config).
Example generate_example(const PlanItem& item, const DatasetConfig& config);

// Rebuilds the frame from the metadata alone: the clean source from the
// recorded stream key, then the recorded chain.
ComplexFrame regenerate(const ExampleMeta& meta);

// One-line JSON object (no trailing newline).
std::string meta_to_json(const ExampleMeta& meta);
ExampleMeta meta_from_json(std::string_view line);

// Stored sample format: little-endian float32, interleaved I/Q.
std::vector<float> to_f32(const ComplexFrame& frame);
ComplexFrame from_f32(const float* data, std::size_t samples);
// Appends the little-endian bytes of `values`.
void append_f32le(std::string& out, const std::vector<float>& values);

}  // namespace sigforge::data

#endif  // SIGFORGE_DATASET_HPP_
