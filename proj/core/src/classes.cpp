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
#include "sigforge/classes.hpp"

#include <array>
#include <string>

#include "sigforge/error.hpp"

namespace sigforge {
namespace {

using F = Family;
using L = QamLayout;
using V = FskVariant;

constexpr std::array<ClassInfo, kNumClasses> kClasses{{
    {0, "OOK", "OOK (On-Off Keying)", F::kPam, 2},
    {1, "BPSK", "BPSK (Binary Phase-Shift Keying)", F::kPsk, 2},
    {2, "4PAM", "4PAM", F::kPam, 4},
    {3, "4ASK", "4ASK", F::kAsk, 4},
    {4, "QPSK", "QPSK (Quadrature Phase-Shift Keying)", F::kPsk, 4},
    {5, "8PAM", "8PAM", F::kPam, 8},
    {6, "8ASK", "8ASK", F::kAsk, 8},
    {7, "8PSK", "8PSK", F::kPsk, 8},
    {8, "16QAM", "16QAM", F::kQam, 16, L::kSquare},
    {9, "16PAM", "16PAM", F::kPam, 16},
    {10, "16ASK", "16ASK", F::kAsk, 16},
    {11, "16PSK", "16PSK", F::kPsk, 16},
    {12, "32QAM", "32QAM", F::kQam, 32, L::kRectangular},
    {13, "32QAM_Cross", "32QAM_Cross", F::kQam, 32, L::kCross},
    {14, "32PAM", "32PAM", F::kPam, 32},
    {15, "32ASK", "32ASK", F::kAsk, 32},
    {16, "32PSK", "32PSK", F::kPsk, 32},
    {17, "64QAM", "64QAM", F::kQam, 64, L::kSquare},
    {18, "64PAM", "64PAM", F::kPam, 64},
    {19, "64ASK", "64ASK", F::kAsk, 64},
    {20, "64PSK", "64PSK", F::kPsk, 64},
    {21, "128QAM_Cross", "128QAM_Cross", F::kQam, 128, L::kCross},
    {22, "256QAM", "256QAM", F::kQam, 256, L::kSquare},
    {23, "512QAM_Cross", "512QAM_Cross", F::kQam, 512, L::kCross},
    {24, "1024QAM", "1024QAM", F::kQam, 1024, L::kSquare},
    {25, "2FSK", "2FSK", F::kFsk, 2, L::kNone, V::kFsk},
    {26, "2GFSK", "2GFSK", F::kFsk, 2, L::kNone, V::kGfsk},
    {27, "2MSK", "2MSK", F::kFsk, 2, L::kNone, V::kMsk},
    {28, "2GMSK", "2GMSK", F::kFsk, 2, L::kNone, V::kGmsk},
    {29, "4FSK", "4FSK", F::kFsk, 4, L::kNone, V::kFsk},
    {30, "4GFSK", "4GFSK", F::kFsk, 4, L::kNone, V::kGfsk},
    {31, "4MSK", "4MSK", F::kFsk, 4, L::kNone, V::kMsk},
    {32, "4GMSK", "4GMSK", F::kFsk, 4, L::kNone, V::kGmsk},
    {33, "8FSK", "8FSK", F::kFsk, 8, L::kNone, V::kFsk},
    {34, "8GFSK", "8GFSK", F::kFsk, 8, L::kNone, V::kGfsk},
    {35, "8MSK", "8MSK", F::kFsk, 8, L::kNone, V::kMsk},
    {36, "8GMSK", "8GMSK", F::kFsk, 8, L::kNone, V::kGmsk},
    {37, "16FSK", "16FSK", F::kFsk, 16, L::kNone, V::kFsk},
    {38, "16GFSK", "16GFSK", F::kFsk, 16, L::kNone, V::kGfsk},
    {39, "16MSK", "16MSK", F::kFsk, 16, L::kNone, V::kMsk},
    {40, "16GMSK", "16GMSK", F::kFsk, 16, L::kNone, V::kGmsk},
    {41, "OFDM-64", "OFDM-64", F::kOfdm, 64},
    {42, "OFDM-72", "OFDM-72", F::kOfdm, 72},
    {43, "OFDM-128", "OFDM-128", F::kOfdm, 128},
    {44, "OFDM-180", "OFDM-180", F::kOfdm, 180},
    {45, "OFDM-256", "OFDM-256", F::kOfdm, 256},
    {46, "OFDM-300", "OFDM-300", F::kOfdm, 300},
    {47, "OFDM-512", "OFDM-512", F::kOfdm, 512},
    {48, "OFDM-600", "OFDM-600", F::kOfdm, 600},
    {49, "OFDM-900", "OFDM-900", F::kOfdm, 900},
    {50, "OFDM-1024", "OFDM-1024", F::kOfdm, 1024},
    {51, "OFDM-1200", "OFDM-1200", F::kOfdm, 1200},
    {52, "OFDM-2048", "OFDM-2048", F::kOfdm, 2048},
}};

constexpr bool table_is_indexed() {
  for (int i = 0; i < kNumClasses; ++i) {
    if (kClasses[static_cast<std::size_t>(i)].index != i) return false;
  }
  return true;
}
static_assert(table_is_indexed());

}  // namespace

std::span<const ClassInfo> class_table() noexcept { return kClasses; }

const ClassInfo& class_info(int index) {
  if (index < 0 || index >= kNumClasses) {
    throw InvalidArgument("class index out of range: " + std::to_string(index));
  }
  return kClasses[static_cast<std::size_t>(index)];
}

std::optional<int> find_class(std::string_view name) noexcept {
  for (const ClassInfo& c : kClasses) {
    if (c.name == name) return c.index;
  }
  return std::nullopt;
}

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::kAsk: return "ASK";
    case Family::kPam: return "PAM";
    case Family::kPsk: return "PSK";
    case Family::kQam: return "QAM";
    case Family::kFsk: return "FSK";
    case Family::kOfdm: return "OFDM";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view text) noexcept {
  for (Family f : {Family::kAsk, Family::kPam, Family::kPsk, Family::kQam, Family::kFsk,
                   Family::kOfdm}) {
    if (to_string(f) == text) return f;
  }
  return std::nullopt;
}

std::string_view to_string(FskVariant variant) noexcept {
  switch (variant) {
    case FskVariant::kFsk: return "FSK";
    case FskVariant::kMsk: return "MSK";
    case FskVariant::kGfsk: return "GFSK";
    case FskVariant::kGmsk: return "GMSK";
  }
  return "?";
}

SignalDescriptor describe(int class_index, double samples_per_symbol) {
  const ClassInfo& info = class_info(class_index);
  if (!(samples_per_symbol > 0.0)) throw InvalidArgument("samples per symbol must be positive");
  SignalDescriptor d;
  d.class_index = info.index;
  d.class_name = std::string(info.name);
  d.family = info.family;
  d.samples_per_symbol = samples_per_symbol;
  return d;
}

}  // namespace sigforge
