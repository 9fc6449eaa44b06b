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

#ifndef SIGFORGE_PIPELINE_HPP_
#define SIGFORGE_PIPELINE_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sigforge/augmentations.hpp"

namespace sigforge::aug {

// Ordered list of gated transforms. Each spec fires with its probability,
// drawn from the example's stream, then draws its own parameters.
//
// Config schema (JSON):
//   {"transforms": [
//      {"kind": "time_reversal", "probability": 0.5,
//       "params": {"undo_inversion": 1}},
//      {"kind": "quantize", "params": {"num_levels": [8, 32], "rounding": "middle"}}
//   ]}
// "probability" defaults to 1. A parameter is a number (fixed) or a
// [lo, hi] pair (drawn); enum parameters also take their name as a string.
// Omitted parameters use default_params(kind); unknown kinds or parameter
// names are rejected.
class Pipeline {
 public:
  Pipeline() = default;
  explicit Pipeline(std::vector<AugmentSpec> specs);

  // Throws FormatError on malformed input.
  static Pipeline from_json(std::string_view text);
  static Pipeline load(const std::filesystem::path& path);
  // time_reversal (p 0.5, spectrum orientation restored), rand_augment with
  // n = 2, then unit-power normalization.
  static Pipeline training_default();

  std::string to_json() const;
  const std::vector<AugmentSpec>& specs() const noexcept { return specs_; }

  Labeled apply(const Labeled& input, RngStream& rng, const SecondarySource* source = nullptr) const;
  ComplexFrame apply(const ComplexFrame& frame, RngStream& rng) const;

 private:
  std::vector<AugmentSpec> specs_;
};

inline constexpr double kTrainingTimeReversalProb = 0.5;

}  // namespace sigforge::aug

#endif  // SIGFORGE_PIPELINE_HPP_
