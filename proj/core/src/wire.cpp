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

#include "trngbench/wire.hpp"

#include <cstdio>

namespace trngbench {

namespace {

// Field layout (byte offsets in the encoded form).
constexpr std::size_t kTagOffset = 0;
constexpr std::size_t kParamSizeOffset = 2;
constexpr std::size_t kOrdinalOffset = 6;       // request only
constexpr std::size_t kReturnCodeOffset = 6;    // response only
constexpr std::size_t kBytesRequestedOffset = 10;
constexpr std::size_t kRandomBytesSizeOffset = 10;
constexpr std::size_t kPayloadOffset = 14;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint16_t get_u16(std::span<const std::uint8_t> raw, std::size_t at) {
  return static_cast<std::uint16_t>(std::uint16_t{raw[at]} << 8 |
                                    std::uint16_t{raw[at + 1]});
}

std::uint32_t get_u32(std::span<const std::uint8_t> raw, std::size_t at) {
  return std::uint32_t{raw[at]} << 24 | std::uint32_t{raw[at + 1]} << 16 |
         std::uint32_t{raw[at + 2]} << 8 | std::uint32_t{raw[at + 3]};
}

[[noreturn]] void reject(WireError::Kind kind, const char* field,
                         std::size_t offset, const std::string& detail) {
  throw WireError(kind, field, offset,
                  std::string(field) + " at offset " +
                      std::to_string(offset) + ": " + detail);
}

std::string hex32(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%08X", v);
  return buf;
}

std::string hex16(std::uint16_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%04X", v);
  return buf;
}

void check_request_fields(const GetRandomRequest& req) {
  if (req.tag != kRequestTag) {
    reject(WireError::Kind::bad_field, "tag", kTagOffset,
           "expected 0x00C1, got " + hex16(req.tag));
  }
  if (req.param_size != kRequestEncodedSize) {
    reject(WireError::Kind::bad_field, "param_size", kParamSizeOffset,
           "expected 14, got " + std::to_string(req.param_size));
  }
  if (req.ordinal != kGetRandomOrdinal) {
    reject(WireError::Kind::bad_field, "ordinal", kOrdinalOffset,
           "expected 0x00000046, got " + hex32(req.ordinal));
  }
  if (req.bytes_requested < 1) {
    reject(WireError::Kind::bad_field, "bytes_requested",
           kBytesRequestedOffset, "must be at least 1");
  }
}

void check_response_fields(const GetRandomResponse& resp) {
  if (resp.tag != kResponseTag) {
    reject(WireError::Kind::bad_field, "tag", kTagOffset,
           "expected 0x00C4, got " + hex16(resp.tag));
  }
  if (resp.random_bytes_size != resp.random_bytes.size()) {
    reject(WireError::Kind::bad_field, "random_bytes_size",
           kRandomBytesSizeOffset,
           "declared " + std::to_string(resp.random_bytes_size) +
               " but payload holds " +
               std::to_string(resp.random_bytes.size()) + " bytes");
  }
  if (resp.param_size != kResponseHeaderSize + resp.random_bytes_size) {
    reject(WireError::Kind::bad_field, "param_size", kParamSizeOffset,
           "expected " +
               std::to_string(kResponseHeaderSize + resp.random_bytes_size) +
               ", got " + std::to_string(resp.param_size));
  }
  if (resp.return_code != 0 && resp.random_bytes_size != 0) {
    reject(WireError::Kind::bad_field, "return_code", kReturnCodeOffset,
           "failure responses must carry an empty payload");
  }
}

}  // namespace

std::vector<std::uint8_t> encode_request(const GetRandomRequest& req) {
  check_request_fields(req);
  std::vector<std::uint8_t> out;
  out.reserve(kRequestEncodedSize);
  put_u16(out, req.tag);
  put_u32(out, req.param_size);
  put_u32(out, req.ordinal);
  put_u32(out, req.bytes_requested);
  return out;
}

GetRandomRequest decode_request(std::span<const std::uint8_t> raw) {
  if (raw.size() < kRequestEncodedSize) {
    reject(WireError::Kind::truncated, "message", 0,
           "need 14 bytes, got " + std::to_string(raw.size()));
  }
  if (raw.size() > kRequestEncodedSize) {
    reject(WireError::Kind::oversized, "message", 0,
           "need exactly 14 bytes, got " + std::to_string(raw.size()));
  }
  GetRandomRequest req;
  req.tag = get_u16(raw, kTagOffset);
  req.param_size = get_u32(raw, kParamSizeOffset);
  req.ordinal = get_u32(raw, kOrdinalOffset);
  req.bytes_requested = get_u32(raw, kBytesRequestedOffset);
  check_request_fields(req);
  return req;
}

std::vector<std::uint8_t> encode_response(const GetRandomResponse& resp) {
  check_response_fields(resp);
  std::vector<std::uint8_t> out;
  out.reserve(resp.param_size);
  put_u16(out, resp.tag);
  put_u32(out, resp.param_size);
  put_u32(out, resp.return_code);
  put_u32(out, resp.random_bytes_size);
  out.insert(out.end(), resp.random_bytes.begin(), resp.random_bytes.end());
  return out;
}

GetRandomResponse decode_response(std::span<const std::uint8_t> raw) {
  if (raw.size() < kResponseHeaderSize) {
    reject(WireError::Kind::truncated, "message", 0,
           "need at least 14 bytes, got " + std::to_string(raw.size()));
  }
  GetRandomResponse resp;
  resp.tag = get_u16(raw, kTagOffset);
  if (resp.tag != kResponseTag) {
    reject(WireError::Kind::bad_field, "tag", kTagOffset,
           "expected 0x00C4, got " + hex16(resp.tag));
  }
  resp.param_size = get_u32(raw, kParamSizeOffset);
  if (resp.param_size != raw.size()) {
    reject(WireError::Kind::framing, "param_size", kParamSizeOffset,
           "declares " + std::to_string(resp.param_size) +
               " bytes but buffer holds " + std::to_string(raw.size()));
  }
  resp.return_code = get_u32(raw, kReturnCodeOffset);
  resp.random_bytes_size = get_u32(raw, kRandomBytesSizeOffset);
  if (resp.random_bytes_size != resp.param_size - kResponseHeaderSize) {
    reject(WireError::Kind::framing, "random_bytes_size",
           kRandomBytesSizeOffset,
           "declares " + std::to_string(resp.random_bytes_size) +
               " payload bytes but framing leaves " +
               std::to_string(resp.param_size - kResponseHeaderSize));
  }
  resp.random_bytes.assign(raw.begin() + kPayloadOffset, raw.end());
  return resp;
}

GetRandomRequest make_request(std::uint32_t bytes_requested) {
  GetRandomRequest req;
  req.bytes_requested = bytes_requested;
  return req;
}

GetRandomResponse make_success_response(std::vector<std::uint8_t> payload) {
  GetRandomResponse resp;
  resp.random_bytes_size = static_cast<std::uint32_t>(payload.size());
  resp.param_size =
      static_cast<std::uint32_t>(kResponseHeaderSize + payload.size());
  resp.random_bytes = std::move(payload);
  return resp;
}

GetRandomResponse make_failure_response(std::uint32_t return_code) {
  GetRandomResponse resp;
  resp.return_code = return_code;
  return resp;
}

}  // namespace trngbench
