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
#include "sigforge/frame.hpp"

#include <cmath>

#include "sigforge/error.hpp"

namespace sigforge {

bool ComplexFrame::all_finite() const noexcept {
  for (const Sample& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) return false;
  }
  return true;
}

double mean_power(const ComplexFrame& frame) {
  if (frame.empty()) throw InvalidArgument("mean_power: empty frame");
  double acc = 0.0;
  for (const Sample& s : frame) acc += s.real() * s.real() + s.imag() * s.imag();
  return acc / static_cast<double>(frame.size());
}

ComplexFrame normalize_unit_power(const ComplexFrame& frame) {
  const double power = mean_power(frame);
  if (!(power > 0.0)) throw ZeroPowerError("normalize_unit_power: frame has zero power");
  return scale(frame, 1.0 / std::sqrt(power));
}

ComplexFrame scale(const ComplexFrame& frame, double factor) {
  ComplexFrame out(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) out[i] = frame[i] * factor;
  return out;
}

}  // namespace sigforge
