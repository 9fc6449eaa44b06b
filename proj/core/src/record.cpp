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
#include "sigforge/record.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "json_codec.hpp"
#include "sigforge/error.hpp"

namespace sigforge {
namespace {

constexpr std::array<std::pair<ImpairmentKind, std::string_view>, 10> kKindNames{{
    {ImpairmentKind::kRrcPulseShape, "rrc_pulse_shape"},
    {ImpairmentKind::kGaussianPulseShape, "gaussian_pulse_shape"},
    {ImpairmentKind::kFskLowpassResample, "fsk_lowpass_resample"},
    {ImpairmentKind::kPhaseShift, "phase_shift"},
    {ImpairmentKind::kTimeShift, "time_shift"},
    {ImpairmentKind::kFreqShift, "freq_shift"},
    {ImpairmentKind::kRayleigh, "rayleigh"},
    {ImpairmentKind::kIqImbalance, "iq_imbalance"},
    {ImpairmentKind::kResample, "resample"},
    {ImpairmentKind::kAwgn, "awgn"},
}};

}  // namespace

std::string_view to_string(ImpairmentKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<ImpairmentKind> parse_impairment_kind(std::string_view text) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

bool is_generation_time(ImpairmentKind kind) noexcept {
  return kind == ImpairmentKind::kRrcPulseShape || kind == ImpairmentKind::kGaussianPulseShape ||
         kind == ImpairmentKind::kFskLowpassResample;
}

double ImpairmentStep::param(std::string_view name) const {
  const auto it = params.find(name);
  if (it == params.end()) {
    throw FormatError("impairment step '" + std::string(to_string(kind)) +
                      "' is missing parameter '" + std::string(name) + "'");
  }
  return it->second;
}

const ImpairmentStep* ImpairmentRecord::find(ImpairmentKind kind) const noexcept {
  for (const ImpairmentStep& s : steps) {
    if (s.kind == kind) return &s;
  }
  return nullptr;
}

namespace detail {

Json finite_or_null(double value) {
  if (std::isfinite(value)) return value;
  return nullptr;
}

double number_or_inf(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw FormatError("expected a number or null");
  return j.get<double>();
}

Json to_json(const ImpairmentRecord& record) {
  Json steps = Json::array();
  for (const ImpairmentStep& s : record.steps) {
    Json step;
    step["kind"] = std::string(to_string(s.kind));
    Json params = Json::object();
    for (const auto& [name, value] : s.params) params[name] = value;
    step["params"] = std::move(params);
    if (s.seed) step["seed"] = *s.seed;
    steps.push_back(std::move(step));
  }
  Json j;
  j["steps"] = std::move(steps);
  j["target_esn0_db"] = finite_or_null(record.target_esn0_db);
  return j;
}

ImpairmentRecord record_from(const Json& j) {
  try {
    ImpairmentRecord record;
    record.target_esn0_db = number_or_inf(j.at("target_esn0_db"));
    for (const Json& step : j.at("steps")) {
      ImpairmentStep s;
      const auto kind = parse_impairment_kind(step.at("kind").get<std::string>());
      if (!kind) throw FormatError("unknown impairment kind " + step.at("kind").dump());
      s.kind = *kind;
      for (const auto& [name, value] : step.at("params").items()) {
        s.params.emplace(name, value.get<double>());
      }
      if (step.contains("seed")) s.seed = step.at("seed").get<std::uint64_t>();
      record.steps.push_back(std::move(s));
    }
    return record;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed impairment record: ") + e.what());
  }
}

}  // namespace detail

std::string record_to_json(const ImpairmentRecord& record) { return detail::to_json(record).dump(); }

ImpairmentRecord record_from_json(std::string_view text) {
  detail::Json j;
  try {
    j = detail::Json::parse(text);
  } catch (const detail::Json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  return detail::record_from(j);
}

}  // namespace sigforge
