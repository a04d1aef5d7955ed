/*
 * Copyright 2026 The trngbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TRNGBENCH_WIRE_HPP
#define TRNGBENCH_WIRE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trngbench {

/// TPM 1.2 command stream constants for TPM_GetRandom. All multi-byte
/// fields are big-endian (network order).
inline constexpr std::uint16_t kRequestTag = 0x00C1;   // no authorization
inline constexpr std::uint16_t kResponseTag = 0x00C4;  // response counterpart
inline constexpr std::uint32_t kGetRandomOrdinal = 0x00000046;
inline constexpr std::size_t kRequestEncodedSize = 14;
inline constexpr std::size_t kResponseHeaderSize = 14;

struct GetRandomRequest {
  std::uint16_t tag = kRequestTag;
  std::uint32_t param_size = kRequestEncodedSize;  // total encoded length
  std::uint32_t ordinal = kGetRandomOrdinal;
  std::uint32_t bytes_requested = 0;

  bool operator==(const GetRandomRequest&) const = default;
};

struct GetRandomResponse {
  std::uint16_t tag = kResponseTag;
  std::uint32_t param_size = kResponseHeaderSize;  // header + payload length
  std::uint32_t return_code = 0;                   // 0 = success
  std::uint32_t random_bytes_size = 0;             // length of random_bytes
  std::vector<std::uint8_t> random_bytes;

  bool operator==(const GetRandomResponse&) const = default;
};

/// Raised by the codecs. `field` names the first offending field and
/// `offset` its byte position in the encoded form, so callers (and tests)
/// can pinpoint exactly what was rejected.
class WireError : public std::runtime_error {
 public:
  enum class Kind {
    truncated,  // buffer shorter than the fixed/declared length
    oversized,  // buffer longer than the fixed length
    framing,    // declared lengths disagree with each other or the buffer
    bad_field,  // a field holds a value the protocol forbids
  };

  WireError(Kind kind, std::string field, std::size_t offset,
            const std::string& message)
      : std::runtime_error(message),
        kind_(kind),
        field_(std::move(field)),
        offset_(offset) {}

  Kind kind() const { return kind_; }
  const std::string& field() const { return field_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::string field_;
  std::size_t offset_;
};

/// Serializes a request into its 14-byte wire form. Throws WireError if the
/// message violates a protocol invariant.
std::vector<std::uint8_t> encode_request(const GetRandomRequest& req);

/// Parses and validates a 14-byte request buffer.
GetRandomRequest decode_request(std::span<const std::uint8_t> raw);

/// Serializes a response; output length equals the embedded param_size.
std::vector<std::uint8_t> encode_response(const GetRandomResponse& resp);

/// Parses a response buffer. The parsed random_bytes_size is authoritative:
/// a chip may return fewer bytes than were requested while still reporting
/// success, and consumers must trust this header, not their request.
GetRandomResponse decode_response(std::span<const std::uint8_t> raw);

/// Well-formed request for `bytes_requested` random bytes.
GetRandomRequest make_request(std::uint32_t bytes_requested);

/// Success response owning `payload`.
GetRandomResponse make_success_response(std::vector<std::uint8_t> payload);

/// Failure response (empty payload) with the given nonzero return code.
GetRandomResponse make_failure_response(std::uint32_t return_code);

}  // namespace trngbench

#endif  // TRNGBENCH_WIRE_HPP
