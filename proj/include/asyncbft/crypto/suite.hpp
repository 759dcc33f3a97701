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

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "asyncbft/bytes.hpp"
#include "asyncbft/rng.hpp"

namespace asyncbft::crypto {

// Field element of Z_q. The internal layout belongs to the suite that made it;
// only the suite's encode() is canonical.
struct Scalar {
  std::array<uint8_t, 32> v{};
  auto operator<=>(const Scalar &) const = default;
};

// Element of the prime-order group G_q.
struct Point {
  std::array<uint8_t, 32> v{};
  auto operator<=>(const Point &) const = default;
};

struct SigKeyPair {
  Bytes sk;
  Bytes vk;
};

struct VrfKeyPair {
  Scalar sk;
  Point pk;
};

struct VrfOutput {
  Bytes r;      // λ bits, compared as an unsigned big-endian integer
  Bytes proof;  // empty in mock mode
  bool operator==(const VrfOutput &) const = default;
};

/// Arithmetic, hashing, signatures and VRF for one instantiation.
///
/// Two implementations exist: a mock one over the additive group Z_q with a
/// small prime q (so brute-force oracles are possible and nothing is secure),
/// and a real one over ristretto255.
class Suite {
 public:
  virtual ~Suite() = default;

  virtual std::string_view name() const = 0;
  virtual bool is_mock() const = 0;
  /// Mock modulus; throws for the real suite.
  virtual uint64_t mock_modulus() const = 0;

  virtual std::size_t scalar_bytes() const = 0;
  virtual std::size_t point_bytes() const = 0;
  /// λ/8: width of hashes and VRF evaluations.
  virtual std::size_t hash_bytes() const = 0;

  // Z_q
  virtual Scalar scalar(uint64_t v) const = 0;
  virtual Scalar add(const Scalar &a, const Scalar &b) const = 0;
  virtual Scalar sub(const Scalar &a, const Scalar &b) const = 0;
  virtual Scalar mul(const Scalar &a, const Scalar &b) const = 0;
  virtual Scalar neg(const Scalar &a) const = 0;
  /// Throws ParameterError on zero.
  virtual Scalar inv(const Scalar &a) const = 0;
  virtual bool is_zero(const Scalar &a) const = 0;
  virtual Scalar random_scalar(Rng &rng) const = 0;
  virtual Scalar hash_to_scalar(ByteSpan data) const = 0;

  // G_q
  virtual Point identity() const = 0;
  virtual Point g1() const = 0;
  virtual Point g2() const = 0;
  virtual Point add(const Point &a, const Point &b) const = 0;
  virtual Point sub(const Point &a, const Point &b) const = 0;
  virtual Point mul(const Point &p, const Scalar &k) const = 0;
  virtual Point hash_to_point(ByteSpan data) const = 0;

  virtual Bytes encode(const Scalar &s) const = 0;
  virtual Bytes encode(const Point &p) const = 0;
  virtual std::optional<Scalar> decode_scalar(ByteSpan data) const = 0;
  virtual std::optional<Point> decode_point(ByteSpan data) const = 0;

  // Signatures. In the mock suite vk == sk and anyone can forge; it exists only
  // to exercise the protocol logic.
  virtual SigKeyPair sig_keygen(Rng &rng) const = 0;
  virtual Bytes sign(ByteSpan sk, ByteSpan msg) const = 0;
  virtual bool verify(ByteSpan vk, ByteSpan msg, ByteSpan sig) const = 0;

  virtual VrfKeyPair vrf_keygen(Rng &rng) const = 0;
  virtual VrfOutput vrf_eval(const VrfKeyPair &kp, ByteSpan input) const = 0;
  virtual bool vrf_verify(const Point &pk, ByteSpan input, const VrfOutput &out) const = 0;

  /// SHA-256 truncated to λ bits.
  Bytes hash(ByteSpan data) const;
  /// Counter-mode stretch of SHA-256 to `len` bytes.
  Bytes hash_n(ByteSpan data, std::size_t len) const;

  // Conveniences built on the above.
  Point mul_g1(const Scalar &k) const { return mul(g1(), k); }
  Point mul_g2(const Scalar &k) const { return mul(g2(), k); }
  void write(Writer &w, const Scalar &s) const { w.raw(encode(s)); }
  void write(Writer &w, const Point &p) const { w.raw(encode(p)); }
  /// Throw DecodeError on malformed encodings.
  Scalar read_scalar(Reader &r) const;
  Point read_point(Reader &r) const;
};

using SuitePtr = std::shared_ptr<const Suite>;

SuitePtr make_mock_suite(uint64_t q = 97, uint64_t g1 = 2, uint64_t g2 = 3);
SuitePtr make_real_suite();

/// Compare two λ-bit values as unsigned big-endian integers.
int compare_be(ByteSpan a, ByteSpan b);

}  // namespace asyncbft::crypto
