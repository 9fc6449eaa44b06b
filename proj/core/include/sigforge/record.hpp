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
#ifndef SIGFORGE_RECORD_HPP_
#define SIGFORGE_RECORD_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sigforge {

enum class ImpairmentKind : std::uint8_t {
  // Generation-time pulse shaping. Already baked into the frame handed to the
  // chain; replay skips these.
  kRrcPulseShape,
  kGaussianPulseShape,
  kFskLowpassResample,
  // Chain impairments, in application order.
  kPhaseShift,
  kTimeShift,
  kFreqShift,
  kRayleigh,
  kIqImbalance,
  kResample,
  kAwgn,
};

std::string_view to_string(ImpairmentKind kind) noexcept;
std::optional<ImpairmentKind> parse_impairment_kind(std::string_view text) noexcept;
bool is_generation_time(ImpairmentKind kind) noexcept;

struct ImpairmentStep {
  ImpairmentKind kind = ImpairmentKind::kPhaseShift;
  std::map<std::string, double, std::less<>> params;
  // Key of the child stream used by randomized steps (Rayleigh taps, noise).
  std::optional<std::uint64_t> seed;

  // Throws FormatError when the parameter is missing.
  double param(std::string_view name) const;

  friend bool operator==(const ImpairmentStep&, const ImpairmentStep&) = default;
};

// Everything the impairment chain drew for one example, in order.
struct ImpairmentRecord {
  std::vector<ImpairmentStep> steps;
  double target_esn0_db = std::numeric_limits<double>::infinity();

  bool contains(ImpairmentKind kind) const noexcept { return find(kind) != nullptr; }
  const ImpairmentStep* find(ImpairmentKind kind) const noexcept;

  friend bool operator==(const ImpairmentRecord&, const ImpairmentRecord&) = default;
};

std::string record_to_json(const ImpairmentRecord& record);
ImpairmentRecord record_from_json(std::string_view text);

}  // namespace sigforge

#endif  // SIGFORGE_RECORD_HPP_
