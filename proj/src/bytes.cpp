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

#include "asyncbft/bytes.hpp"

#include <sodium.h>

#include "asyncbft/rng.hpp"

namespace asyncbft {

std::string to_hex(ByteSpan data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParameterError("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ParameterError("invalid hex digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = uint8_t(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

namespace {

std::array<uint8_t, 32> derive_key(ByteSpan parent, std::string_view label) {
  std::array<uint8_t, 32> out{};
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  crypto_hash_sha256_update(&st, parent.data(), parent.size());
  crypto_hash_sha256_update(&st, reinterpret_cast<const uint8_t *>(label.data()), label.size());
  crypto_hash_sha256_final(&st, out.data());
  return out;
}

}  // namespace

Rng::Rng(uint64_t seed) {
  Writer w;
  w.str("asyncbft-rng").u64(seed);
  key_ = derive_key(w.data(), "");
}

Rng::Rng(std::span<const uint8_t, 32> key) { std::copy(key.begin(), key.end(), key_.begin()); }

Rng Rng::fork(std::string_view label) const {
  auto k = derive_key(key_, label);
  return Rng(std::span<const uint8_t, 32>(k));
}

Rng Rng::fork(uint64_t label) const {
  Writer w;
  w.u64(label);
  auto k = derive_key(key_, std::string_view(reinterpret_cast<const char *>(w.data().data()), w.size()));
  return Rng(std::span<const uint8_t, 32>(k));
}

void Rng::refill() {
  std::array<uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
  for (int i = 0; i < 8; ++i) nonce[i] = uint8_t(block_ >> (8 * i));
  crypto_stream_chacha20(buf_.data(), buf_.size(), nonce.data(), key_.data());
  ++block_;
  pos_ = 0;
}

void Rng::fill(std::span<uint8_t> out) {
  for (auto &b : out) {
    if (pos_ == buf_.size()) refill();
    b = buf_[pos_++];
  }
}

uint64_t Rng::next_u64() {
  if (buf_.size() - pos_ < 8) refill();
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | buf_[pos_ + i];
  pos_ += 8;
  return v;
}

uint64_t Rng::uniform(uint64_t bound) {
  if (bound == 0) throw ParameterError("uniform bound must be non-zero");
  const uint64_t limit = max() - max() % bound;
  for (;;) {
    uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Rng::unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

}  // namespace asyncbft
