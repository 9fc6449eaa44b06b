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

#include "sigforge/dataset.hpp"

#include <array>
#include <bit>
#include <cstring>

#include "json_codec.hpp"
#include "sigforge/error.hpp"

namespace sigforge::data {
namespace {

using detail::Json;

constexpr std::array<std::string_view, 4> kVariantNames{"clean-train", "clean-val", "impaired-train",
                                                        "impaired-val"};

std::uint32_t bswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

}  // namespace

std::string_view to_string(Variant v) noexcept { return kVariantNames[static_cast<std::size_t>(v)]; }

std::optional<Variant> parse_variant(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (kVariantNames[i] == text) return static_cast<Variant>(i);
  }
  return std::nullopt;
}

std::uint64_t full_scale_count(Variant v) noexcept {
  switch (v) {
    case Variant::kCleanTrain: return 1'060'000;
    case Variant::kCleanVal: return 106'000;
    case Variant::kImpairedTrain: return 5'300'000;
    case Variant::kImpairedVal: return 106'000;
  }
  return 0;
}

void DatasetConfig::validate() const {
  if (frame_len == 0) throw InvalidArgument("frame_len must be positive");
  if (is_impaired(variant)) profile.validate();
}

PlanItem plan_item(const DatasetConfig& config, std::uint64_t index) {
  return {index, static_cast<int>(index % kNumClasses), derive_stream(config.seed, index)};
}

std::vector<PlanItem> plan(const DatasetConfig& config, std::uint64_t begin, std::uint64_t end) {
  std::vector<PlanItem> items;
  for (std::uint64_t i = begin; i < end; ++i) items.push_back(plan_item(config, i));
  return items;
}

Example generate_example(const PlanItem& item, const DatasetConfig& config) {
  RngStream rng = item.rng;
  const bool impaired = is_impaired(config.variant);
  const bool randomize = impaired && config.profile.random_pulse_shape;
  impair::ShapedSource src = impair::gen_impaired_source(item.class_index, rng, config.frame_len, randomize);

  Example ex;
  ExampleMeta& m = ex.meta;
  m.index = item.index;
  m.class_index = item.class_index;
  m.class_name = src.waveform.descriptor.class_name;
  m.family = src.waveform.descriptor.family;
  m.rng_key = item.rng.key();
  m.frame_len = config.frame_len;
  m.impaired = impaired;
  if (!impaired) {
    m.samples_per_symbol = src.waveform.descriptor.samples_per_symbol;
    ex.frame = std::move(src.waveform.frame);
    return ex;
  }
  impair::ChainResult chain =
      impair::apply_impairment_chain(src.waveform.frame, src.waveform.descriptor, config.profile, rng);
  if (src.shaping) chain.record.steps.insert(chain.record.steps.begin(), *src.shaping);
  m.samples_per_symbol = chain.descriptor.samples_per_symbol;
  m.snr_db = chain.descriptor.snr_db;
  m.record = std::move(chain.record);
  ex.frame = std::move(chain.frame);
  return ex;
}

ComplexFrame regenerate(const ExampleMeta& meta) {
  RngStream rng(meta.rng_key);
  bool randomize = false;
  for (const ImpairmentStep& s : meta.record.steps) randomize = randomize || is_generation_time(s.kind);
  impair::ShapedSource src = impair::gen_impaired_source(meta.class_index, rng, meta.frame_len, randomize);
  if (src.shaping && meta.record.steps.front() != *src.shaping) {
    throw FormatError("pulse-shape step does not match the stream key");
  }
  if (!meta.impaired) return std::move(src.waveform.frame);
  return impair::replay(meta.record, src.waveform.frame);
}

std::string meta_to_json(const ExampleMeta& m) {
  Json j;
  j["index"] = m.index;
  j["class_index"] = m.class_index;
  j["class_name"] = m.class_name;
  j["family"] = std::string(to_string(m.family));
  j["samples_per_symbol"] = m.samples_per_symbol;
  j["snr_db"] = m.snr_db ? Json(*m.snr_db) : Json(nullptr);
  j["impaired"] = m.impaired;
  j["frame_len"] = m.frame_len;
  j["rng_key"] = m.rng_key;
  j["impairments"] = detail::to_json(m.record);
  return j.dump();
}

ExampleMeta meta_from_json(std::string_view line) {
  try {
    const Json j = Json::parse(line);
    ExampleMeta m;
    m.index = j.at("index").get<std::uint64_t>();
    m.class_index = j.at("class_index").get<int>();
    m.class_name = j.at("class_name").get<std::string>();
    const auto family = parse_family(j.at("family").get<std::string>());
    if (!family) throw FormatError("unknown family " + j.at("family").dump());
    m.family = *family;
    m.samples_per_symbol = j.at("samples_per_symbol").get<double>();
    if (!j.at("snr_db").is_null()) m.snr_db = j.at("snr_db").get<double>();
    m.impaired = j.at("impaired").get<bool>();
    m.frame_len = j.at("frame_len").get<std::size_t>();
    m.rng_key = j.at("rng_key").get<std::uint64_t>();
    m.record = detail::record_from(j.at("impairments"));
    const ClassInfo& info = class_info(m.class_index);
    if (info.name != m.class_name || info.family != m.family) {
      throw FormatError("class fields disagree with the class table");
    }
    return m;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed example metadata: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("malformed example metadata: ") + e.what());
  }
}

std::vector<float> to_f32(const ComplexFrame& frame) {
  std::vector<float> out(2 * frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) {
    out[2 * n] = static_cast<float>(frame[n].real());
    out[2 * n + 1] = static_cast<float>(frame[n].imag());
  }
  return out;
}

ComplexFrame from_f32(const float* data, std::size_t samples) {
  ComplexFrame out(samples);
  for (std::size_t n = 0; n < samples; ++n) out[n] = {data[2 * n], data[2 * n + 1]};
  return out;
}

void append_f32le(std::string& out, const std::vector<float>& values) {
  const std::size_t base = out.size();
  out.resize(base + 4 * values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto bits = std::bit_cast<std::uint32_t>(values[i]);
    if constexpr (std::endian::native == std::endian::big) bits = bswap32(bits);
    std::memcpy(out.data() + base + 4 * i, &bits, 4);
  }
}

}  // namespace sigforge::data
