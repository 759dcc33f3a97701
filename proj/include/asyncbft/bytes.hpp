#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The asyncbft Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace asyncbft {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

/// Raised for malformed inputs to public operations (wrong cardinality,
/// duplicate indices, unknown parties, inconsistent configuration).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by Reader when a canonical encoding is truncated or malformed.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string &what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_{offset} {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

std::string to_hex(ByteSpan data);
Bytes from_hex(std::string_view hex);

/// Canonical big-endian writer. Variable-length fields are prefixed with a
/// u32 length.
class Writer {
 public:
  Writer &u8(uint8_t v) {
    buf_.push_back(v);
    return *this;
  }
  Writer &u16(uint16_t v) {
    buf_.push_back(uint8_t(v >> 8));
    buf_.push_back(uint8_t(v));
    return *this;
  }
  Writer &u32(uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) buf_.push_back(uint8_t(v >> s));
    return *this;
  }
  Writer &u64(uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) buf_.push_back(uint8_t(v >> s));
    return *this;
  }
  Writer &raw(ByteSpan data) {
    buf_.insert(buf_.end(), data.begin(), data.end());
    return *this;
  }
  Writer &bytes(ByteSpan data) {
    u32(uint32_t(data.size()));
    return raw(data);
  }
  Writer &str(std::string_view s) {
    u32(uint32_t(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
    return *this;
  }

  const Bytes &data() const & { return buf_; }
  Bytes take() && { return std::move(buf_); }
  std::size_t size() const { return buf_.size(); }

 private:
  Bytes buf_;
};

class Reader {
 public:
  explicit Reader(ByteSpan data) : data_{data} {}

  uint8_t u8() { return need(1)[0]; }
  uint16_t u16() {
    auto p = need(2);
    return uint16_t((p[0] << 8) | p[1]);
  }
  uint32_t u32() {
    auto p = need(4);
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
  }
  uint64_t u64() {
    uint64_t hi = u32();
    return (hi << 32) | u32();
  }
  ByteSpan raw(std::size_t n) { return need(n); }
  Bytes bytes(std::size_t max_len = 1u << 26) {
    auto n = u32();
    if (n > max_len) throw DecodeError("length prefix too large", pos_ - 4);
    auto p = need(n);
    return Bytes(p.begin(), p.end());
  }
  std::string str(std::size_t max_len = 1u << 16) {
    auto b = bytes(max_len);
    return std::string(b.begin(), b.end());
  }

  bool done() const { return pos_ == data_.size(); }
  std::size_t offset() const { return pos_; }
  void expect_done() const {
    if (!done()) throw DecodeError("trailing bytes", pos_);
  }

 private:
  ByteSpan need(std::size_t n) {
    if (data_.size() - pos_ < n) throw DecodeError("truncated input", pos_);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  ByteSpan data_;
  std::size_t pos_ = 0;
};

}  // namespace asyncbft
