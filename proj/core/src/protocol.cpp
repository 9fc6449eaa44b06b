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

#include "sigforge/protocol.hpp"

#include <bit>
#include <cstring>
#include <limits>

#include "json_codec.hpp"
#include "sigforge/error.hpp"

namespace sigforge::net {
namespace {

using detail::Json;

template <typename T>
T required_uint(const Json& j, const char* key) {
  if (!j.contains(key)) throw ProtocolError(std::string("request is missing '") + key + "'");
  const Json& v = j[key];
  if (!v.is_number_unsigned()) throw ProtocolError(std::string("'") + key + "' must be a non-negative integer");
  const auto raw = v.get<std::uint64_t>();
  if (raw > std::numeric_limits<T>::max()) throw ProtocolError(std::string("'") + key + "' is too large");
  return static_cast<T>(raw);
}

}  // namespace

std::array<std::uint8_t, kHeaderSize> encode_header(MessageType type, std::uint32_t length) {
  std::array<std::uint8_t, kHeaderSize> h{};
  std::copy(kMagic.begin(), kMagic.end(), h.begin());
  h[4] = kProtocolVersion;
  h[5] = static_cast<std::uint8_t>(type);
  for (int i = 0; i < 4; ++i) h[6 + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(length >> (8 * i));
  return h;
}

WireHeader decode_header(std::span<const std::uint8_t, kHeaderSize> bytes) {
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) throw ProtocolError("bad magic");
  if (bytes[4] != kProtocolVersion) throw ProtocolError("unsupported protocol version " + std::to_string(bytes[4]));
  WireHeader h;
  switch (bytes[5]) {
    case 1: h.type = MessageType::kRequest; break;
    case 2: h.type = MessageType::kResponse; break;
    case 255: h.type = MessageType::kError; break;
    default: throw ProtocolError("unknown message type " + std::to_string(bytes[5]));
  }
  for (int i = 0; i < 4; ++i) h.length |= static_cast<std::uint32_t>(bytes[6 + static_cast<std::size_t>(i)]) << (8 * i);
  return h;
}

std::string encode_message(MessageType type, std::string_view payload) {
  if (payload.size() > std::numeric_limits<std::uint32_t>::max()) throw ProtocolError("payload too large");
  const auto header = encode_header(type, static_cast<std::uint32_t>(payload.size()));
  std::string out(header.begin(), header.end());
  out.append(payload);
  return out;
}

BatchRequest parse_batch_request(std::string_view json) {
  Json j;
  try {
    j = Json::parse(json);
  } catch (const Json::exception& e) {
    throw ProtocolError(std::string("request is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("request must be a JSON object");
  BatchRequest r;
  r.batch_size = required_uint<std::uint32_t>(j, "batch_size");
  r.seed = required_uint<std::uint64_t>(j, "seed");
  r.start_index = required_uint<std::uint64_t>(j, "start_index");
  if (j.contains("frame_len")) r.frame_len = required_uint<std::size_t>(j, "frame_len");
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw ProtocolError("'variant' must be a string");
    const auto v = data::parse_variant(j["variant"].get<std::string>());
    if (!v) throw ProtocolError("unknown variant " + j["variant"].dump());
    r.variant = *v;
  }
  if (r.batch_size < 1 || r.batch_size > kMaxBatchSize) {
    throw ProtocolError("batch_size must be in [1, " + std::to_string(kMaxBatchSize) + "]");
  }
  if (r.frame_len < kMinFrameLen || r.frame_len > kMaxFrameLen) {
    throw ProtocolError("frame_len must be in [" + std::to_string(kMinFrameLen) + ", " +
                        std::to_string(kMaxFrameLen) + "]");
  }
  if (std::uint64_t{r.batch_size} * r.frame_len > kMaxBatchSamples) {
    throw ProtocolError("batch_size * frame_len exceeds " + std::to_string(kMaxBatchSamples));
  }
  return r;
}

std::string batch_request_to_json(const BatchRequest& r) {
  return Json{{"batch_size", r.batch_size},
              {"variant", std::string(data::to_string(r.variant))},
              {"seed", r.seed},
              {"start_index", r.start_index},
              {"frame_len", r.frame_len}}
      .dump();
}

std::string build_batch_response(const BatchRequest& request, ThreadPool* pool) {
  data::DatasetConfig config;
  config.variant = request.variant;
  config.seed = request.seed;
  config.frame_len = request.frame_len;
  config.count = request.batch_size;

  const std::size_t n = request.batch_size;
  std::vector<std::string> frames(n);
  std::vector<std::string> metas(n);
  const auto work = [&](std::size_t k) {
    const data::Example ex = data::generate_example(data::plan_item(config, request.start_index + k), config);
    data::append_f32le(frames[k], data::to_f32(ex.frame));
    metas[k] = data::meta_to_json(ex.meta);
  };
  if (pool != nullptr) {
    pool->parallel_for(n, work);
  } else {
    for (std::size_t k = 0; k < n; ++k) work(k);
  }

  std::string meta_text;
  for (const std::string& m : metas) {
    meta_text += m;
    meta_text += '\n';
  }
  const std::size_t frame_bytes = n * request.frame_len * 8;
  const Json header = {{"count", n},
                       {"frame_len", request.frame_len},
                       {"dtype", "f32le-interleaved"},
                       {"frame_bytes", frame_bytes},
                       {"meta_bytes", meta_text.size()}};
  std::string payload = header.dump();
  payload += '\n';
  payload.reserve(payload.size() + frame_bytes + meta_text.size());
  for (const std::string& f : frames) payload += f;
  payload += meta_text;
  return payload;
}

BatchResponse parse_batch_response(std::string_view payload) {
  const std::size_t nl = payload.find('\n');
  if (nl == std::string_view::npos) throw ProtocolError("response has no header line");
  Json header;
  try {
    header = Json::parse(payload.substr(0, nl));
  } catch (const Json::exception& e) {
    throw ProtocolError(std::string("response header is not JSON: ") + e.what());
  }
  BatchResponse r;
  try {
    r.count = header.at("count").get<std::size_t>();
    r.frame_len = header.at("frame_len").get<std::size_t>();
    const auto frame_bytes = header.at("frame_bytes").get<std::size_t>();
    const auto meta_bytes = header.at("meta_bytes").get<std::size_t>();
    if (header.at("dtype").get<std::string>() != "f32le-interleaved") throw ProtocolError("unsupported dtype");
    if (frame_bytes != r.count * r.frame_len * 8 || nl + 1 + frame_bytes + meta_bytes != payload.size()) {
      throw ProtocolError("response sizes do not add up");
    }
    r.samples.resize(2 * r.count * r.frame_len);
    const char* src = payload.data() + nl + 1;
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      std::uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) {
        bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(src[4 * i + static_cast<std::size_t>(b)])) << (8 * b);
      }
      r.samples[i] = std::bit_cast<float>(bits);
    }
    std::string_view meta = payload.substr(nl + 1 + frame_bytes);
    while (!meta.empty()) {
      const std::size_t end = meta.find('\n');
      if (end == std::string_view::npos) throw ProtocolError("unterminated metadata line");
      r.meta.push_back(data::meta_from_json(meta.substr(0, end)));
      meta.remove_prefix(end + 1);
    }
    if (r.meta.size() != r.count) throw ProtocolError("metadata count mismatch");
  } catch (const Json::exception& e) {
    throw ProtocolError(std::string("malformed response header: ") + e.what());
  } catch (const FormatError& e) {
    throw ProtocolError(e.what());
  }
  return r;
}

std::string error_payload(std::string_view message) {
  return Json{{"error", std::string(message)}}.dump();
}

}  // namespace sigforge::net
