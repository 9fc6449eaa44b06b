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
#ifndef SIGFORGE_CLASSES_HPP_
#define SIGFORGE_CLASSES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace sigforge {

enum class Family : std::uint8_t { kAsk, kPam, kPsk, kQam, kFsk, kOfdm };

enum class FskVariant : std::uint8_t { kFsk, kMsk, kGfsk, kGmsk };

// Grid layout of a QAM constellation.
enum class QamLayout : std::uint8_t { kNone, kSquare, kCross, kRectangular };

// One row of the 53-class table.
struct ClassInfo {
  int index;
  std::string_view name;
  std::string_view display_name;
  Family family;
  // Constellation order M for ASK/PAM/PSK/QAM/FSK, subcarrier count N for OFDM.
  int order;
  QamLayout layout = QamLayout::kNone;
  FskVariant fsk_variant = FskVariant::kFsk;
};

inline constexpr int kNumClasses = 53;

std::span<const ClassInfo> class_table() noexcept;

// Throws InvalidArgument when index is outside [0, 52].
const ClassInfo& class_info(int index);

std::optional<int> find_class(std::string_view name) noexcept;

// Families whose classes are built from a constellation table and RRC shaping.
constexpr bool is_linear(Family f) noexcept {
  return f == Family::kAsk || f == Family::kPam || f == Family::kPsk || f == Family::kQam;
}

std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view text) noexcept;
std::string_view to_string(FskVariant variant) noexcept;

// Class identity of one example plus the generation parameters that affect
// how its energy maps to Es/N0.
struct SignalDescriptor {
  int class_index = 0;
  std::string class_name;
  Family family = Family::kPam;
  double samples_per_symbol = 2.0;
  std::optional<double> snr_db;  // Es/N0, impaired examples only

  friend bool operator==(const SignalDescriptor&, const SignalDescriptor&) = default;
};

SignalDescriptor describe(int class_index, double samples_per_symbol);

}  // namespace sigforge

#endif  // SIGFORGE_CLASSES_HPP_
