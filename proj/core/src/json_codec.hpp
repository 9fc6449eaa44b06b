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
// nlohmann/json conversions shared by the record, dataset and wire modules.
// Private to the library so the public headers stay dependency free.
#ifndef SIGFORGE_SRC_JSON_CODEC_HPP_
#define SIGFORGE_SRC_JSON_CODEC_HPP_

#include <json.hpp>

#include "sigforge/record.hpp"

namespace sigforge::detail {

using Json = nlohmann::json;

Json to_json(const ImpairmentRecord& record);
ImpairmentRecord record_from(const Json& j);

// JSON has no infinity; +inf Es/N0 (noise free) travels as null.
Json finite_or_null(double value);
double number_or_inf(const Json& j);

}  // namespace sigforge::detail

#endif  // SIGFORGE_SRC_JSON_CODEC_HPP_
