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

#ifndef SIGFORGE_PROTOCOL_HPP_
#define SIGFORGE_PROTOCOL_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigforge/dataset.hpp"
#include "sigforge/thread_pool.hpp"

namespace sigforge::net {

// Every message: "SG53", u8 version, u8 type, u32 little-endian payload length.
inline constexpr std::array<std::uint8_t, 4> kMagic{'S', 'G', '5', '3'};
inline constexpr std::uint8_t kProtocolVersion = 1;
inline constexpr std::size_t kHeaderSize = 10;

enum class MessageType : std::uint8_t { kRequest = 1, kResponse = 2, kError = 255 };

inline constexpr std::uint32_t kMaxRequestPayload = 64 * 1024;
inline constexpr std::uint32_t kMaxBatchSize = 4096;
inline constexpr std::size_t kMinFrameLen = 256;
inline constexpr std::size_t kMaxFrameLen = 1 << 16;
// Upper bound on batch_size * frame_len per request.
inline constexpr std::uint64_t kMaxBatchSamples = std::uint64_t{1} << 24;

struct WireHeader {
  MessageType type = MessageType::kRequest;
  std::uint32_t length = 0;
};

std::array<std::uint8_t, kHeaderSize> encode_header(MessageType type, std::uint32_t length);
// Checks magic, version and type. Throws ProtocolError.
WireHeader decode_header(std::span<const std::uint8_t, kHeaderSize> bytes);
// Header plus payload. Throws ProtocolError when the payload exceeds 4 GiB.
std::string encode_message(MessageType type, std::string_view payload);

struct BatchRequest {
  std::uint32_t batch_size = 1;
  data::Variant variant = data::Variant::kImpairedTrain;
  std::uint64_t seed = 0;
  std::uint64_t start_index = 0;
  std::size_t frame_len = kDefaultFrameLength;
  friend bool operator==(const BatchRequest&, const BatchRequest&) = default;
};

// JSON {"batch_size", "variant", "seed", "start_index", "frame_len"};
// variant and frame_len are optional. Throws ProtocolError on bad input or
// out-of-bounds values.
BatchRequest parse_batch_request(std::string_view json);
std::string batch_request_to_json(const BatchRequest& request);

// Example k of the batch is generate_example at index start_index + k of a
// dataset with the request's variant, seed and frame length.
// Payload: one JSON line {count, frame_len, dtype, frame_bytes, meta_bytes},
// '\n', count * frame_len * 8 frame bytes, meta JSONL.
std::string build_batch_response(const BatchRequest& request, ThreadPool* pool = nullptr);

struct BatchResponse {
  std::size_t count = 0;
  std::size_t frame_len = 0;
  std::vector<float> samples;  // interleaved I/Q, frame-major
  std::vector<data::ExampleMeta> meta;
};
BatchResponse parse_batch_response(std::string_view payload);

std::string error_payload(std::string_view message);

}  // namespace sigforge::net

#endif  // SIGFORGE_PROTOCOL_HPP_
