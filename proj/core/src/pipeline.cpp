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

#include "sigforge/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "json_codec.hpp"
#include "sigforge/error.hpp"

namespace sigforge::aug {
namespace {

using detail::Json;

ParamRange parse_param(AugmentKind kind, const std::string& name, const Json& value) {
  if (value.is_number()) {
    const double v = value.get<double>();
    return {v, v};
  }
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  if (value.is_string()) {
    const auto names = enum_param_values(kind, name);
    const auto text = value.get<std::string>();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == text) return {static_cast<double>(i), static_cast<double>(i)};
    }
    throw FormatError("unknown value '" + text + "' for " + std::string(to_string(kind)) + "." + name);
  }
  throw FormatError("parameter " + std::string(to_string(kind)) + "." + name + " must be a number, [lo, hi] or name");
}

AugmentSpec parse_spec(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw FormatError("every transform needs a string 'kind'");
  }
  const auto kind_name = j["kind"].get<std::string>();
  const auto kind = parse_augment_kind(kind_name);
  if (!kind) throw FormatError("unknown transform kind '" + kind_name + "'");
  AugmentSpec spec;
  spec.kind = *kind;
  if (j.contains("probability")) {
    if (!j["probability"].is_number()) throw FormatError("probability must be a number");
    spec.probability = j["probability"].get<double>();
    if (!(spec.probability >= 0.0 && spec.probability <= 1.0)) throw FormatError("probability must be in [0, 1]");
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw FormatError("params must be an object");
    const ParamMap& defaults = default_params(spec.kind);
    for (const auto& [name, value] : j["params"].items()) {
      if (!defaults.contains(name)) throw FormatError("unknown parameter '" + name + "' for " + kind_name);
      const ParamRange r = parse_param(spec.kind, name, value);
      if (!(r.lo <= r.hi)) throw FormatError("parameter '" + name + "' has lo > hi");
      spec.params[name] = r;
    }
  }
  return spec;
}

}  // namespace

Pipeline::Pipeline(std::vector<AugmentSpec> specs) : specs_(std::move(specs)) {
  for (const AugmentSpec& s : specs_) {
    if (!(s.probability >= 0.0 && s.probability <= 1.0)) throw InvalidArgument("probability must be in [0, 1]");
  }
}

Pipeline Pipeline::from_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("pipeline config: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("transforms") || !doc["transforms"].is_array()) {
    throw FormatError("pipeline config needs a 'transforms' array");
  }
  std::vector<AugmentSpec> specs;
  for (const Json& j : doc["transforms"]) specs.push_back(parse_spec(j));
  return Pipeline(std::move(specs));
}

Pipeline Pipeline::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pipeline config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

Pipeline Pipeline::training_default() {
  return Pipeline({
      AugmentSpec{AugmentKind::kTimeReversal, kTrainingTimeReversalProb, {{"undo_inversion", {1, 1}}}},
      AugmentSpec{AugmentKind::kRandAugment, 1.0, {{"n", {kRandAugmentN, kRandAugmentN}}}},
      AugmentSpec{AugmentKind::kNormalize, 1.0, {}},
  });
}

std::string Pipeline::to_json() const {
  Json transforms = Json::array();
  for (const AugmentSpec& s : specs_) {
    Json params = Json::object();
    for (const auto& [name, r] : s.params) {
      params[name] = r.lo == r.hi ? Json(r.lo) : Json::array({r.lo, r.hi});
    }
    transforms.push_back({{"kind", std::string(aug::to_string(s.kind))}, {"probability", s.probability}, {"params", params}});
  }
  return Json{{"transforms", transforms}}.dump(2);
}

Labeled Pipeline::apply(const Labeled& input, RngStream& rng, const SecondarySource* source) const {
  Labeled cur = input;
  for (const AugmentSpec& s : specs_) {
    if (rng.bernoulli(s.probability)) cur = apply_augment(s, cur, rng, source);
  }
  return cur;
}

ComplexFrame Pipeline::apply(const ComplexFrame& frame, RngStream& rng) const {
  return apply(Labeled{frame, {}}, rng).frame;
}

}  // namespace sigforge::aug
