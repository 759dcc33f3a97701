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

#include "asyncbft/crypto/suite.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "asyncbft/crypto/proofs.hpp"

namespace asyncbft::crypto {

namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  });
}

std::array<uint8_t, 32> sha256(ByteSpan data) {
  std::array<uint8_t, 32> out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

std::array<uint8_t, 64> sha512(ByteSpan data) {
  std::array<uint8_t, 64> out{};
  crypto_hash_sha512(out.data(), data.data(), data.size());
  return out;
}

Bytes tagged(std::string_view tag, std::initializer_list<ByteSpan> parts) {
  Writer w;
  w.str(tag);
  for (auto p : parts) w.bytes(p);
  return std::move(w).take();
}

// ---------------------------------------------------------------------------
// Mock: Z_q written additively, so "g^a" is a*g mod q. Discrete logs are
// trivial; the point is exhaustive checkability, not security.

class MockSuite final : public Suite {
 public:
  MockSuite(uint64_t q, uint64_t g1, uint64_t g2) : q_{q}, g1_{g1 % q}, g2_{g2 % q} {
    if (q < 3 || q >= (1ull << 31)) throw ParameterError("mock modulus must be in [3, 2^31)");
    for (uint64_t d = 2; d * d <= q; ++d) {
      if (q % d == 0) throw ParameterError("mock modulus must be prime");
    }
    if (g1_ == 0 || g2_ == 0) throw ParameterError("mock generators must be non-zero mod q");
  }

  std::string_view name() const override { return "mock"; }
  bool is_mock() const override { return true; }
  uint64_t mock_modulus() const override { return q_; }
  std::size_t scalar_bytes() const override { return 4; }
  std::size_t point_bytes() const override { return 4; }
  std::size_t hash_bytes() const override { return 4; }

  Scalar scalar(uint64_t v) const override { return s_of(v % q_); }
  Scalar add(const Scalar &a, const Scalar &b) const override { return s_of((val(a) + val(b)) % q_); }
  Scalar sub(const Scalar &a, const Scalar &b) const override { return s_of((val(a) + q_ - val(b)) % q_); }
  Scalar mul(const Scalar &a, const Scalar &b) const override { return s_of(val(a) * val(b) % q_); }
  Scalar neg(const Scalar &a) const override { return s_of((q_ - val(a)) % q_); }
  Scalar inv(const Scalar &a) const override {
    if (val(a) == 0) throw ParameterError("inverse of zero");
    return s_of(pow(val(a), q_ - 2));
  }
  bool is_zero(const Scalar &a) const override { return val(a) == 0; }
  Scalar random_scalar(Rng &rng) const override { return s_of(rng.uniform(q_)); }
  Scalar hash_to_scalar(ByteSpan data) const override { return s_of(h64(data) % q_); }

  Point identity() const override { return p_of(0); }
  Point g1() const override { return p_of(g1_); }
  Point g2() const override { return p_of(g2_); }
  Point add(const Point &a, const Point &b) const override { return p_of((val(a) + val(b)) % q_); }
  Point sub(const Point &a, const Point &b) const override { return p_of((val(a) + q_ - val(b)) % q_); }
  Point mul(const Point &p, const Scalar &k) const override { return p_of(val(p) * val(k) % q_); }
  Point hash_to_point(ByteSpan data) const override { return p_of(h64(data) % q_); }

  Bytes encode(const Scalar &s) const override { return enc(val(s)); }
  Bytes encode(const Point &p) const override { return enc(val(p)); }
  std::optional<Scalar> decode_scalar(ByteSpan data) const override {
    auto v = dec(data);
    if (!v) return std::nullopt;
    return s_of(*v);
  }
  std::optional<Point> decode_point(ByteSpan data) const override {
    auto v = dec(data);
    if (!v) return std::nullopt;
    return p_of(*v);
  }

  SigKeyPair sig_keygen(Rng &rng) const override {
    Bytes sk(4);
    rng.fill(sk);
    return {sk, sk};
  }
  Bytes sign(ByteSpan sk, ByteSpan msg) const override { return hash(tagged("mock-sig", {sk, msg})); }
  bool verify(ByteSpan vk, ByteSpan msg, ByteSpan sig) const override {
    auto expect = sign(vk, msg);
    return sig.size() == expect.size() && std::equal(sig.begin(), sig.end(), expect.begin());
  }

  VrfKeyPair vrf_keygen(Rng &rng) const override {
    auto sk = random_scalar(rng);
    return {sk, mul(g1(), sk)};
  }
  VrfOutput vrf_eval(const VrfKeyPair &kp, ByteSpan input) const override { return {vrf_r(kp.pk, input), {}}; }
  bool vrf_verify(const Point &pk, ByteSpan input, const VrfOutput &out) const override {
    return out.proof.empty() && out.r == vrf_r(pk, input);
  }

 private:
  static uint64_t val(const Scalar &s) { return load(s.v); }
  static uint64_t val(const Point &p) { return load(p.v); }
  static uint64_t load(const std::array<uint8_t, 32> &v) {
    uint64_t x = 0;
    for (int i = 7; i >= 0; --i) x = (x << 8) | v[i];
    return x;
  }
  static std::array<uint8_t, 32> store(uint64_t x) {
    std::array<uint8_t, 32> v{};
    for (int i = 0; i < 8; ++i) v[i] = uint8_t(x >> (8 * i));
    return v;
  }
  static Scalar s_of(uint64_t x) { return Scalar{store(x)}; }
  static Point p_of(uint64_t x) { return Point{store(x)}; }

  uint64_t pow(uint64_t b, uint64_t e) const {
    uint64_t r = 1;
    b %= q_;
    while (e) {
      if (e & 1) r = r * b % q_;
      b = b * b % q_;
      e >>= 1;
    }
    return r;
  }
  static uint64_t h64(ByteSpan data) {
    auto d = sha256(data);
    uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x = (x << 8) | d[i];
    return x;
  }
  static Bytes enc(uint64_t x) { return {uint8_t(x >> 24), uint8_t(x >> 16), uint8_t(x >> 8), uint8_t(x)}; }
  std::optional<uint64_t> dec(ByteSpan data) const {
    if (data.size() != 4) return std::nullopt;
    uint64_t x = (uint64_t(data[0]) << 24) | (uint64_t(data[1]) << 16) | (uint64_t(data[2]) << 8) | data[3];
    if (x >= q_) return std::nullopt;
    return x;
  }
  Bytes vrf_r(const Point &pk, ByteSpan input) const { return hash(tagged("mock-vrf", {encode(pk), input})); }

  uint64_t q_, g1_, g2_;
};

// ---------------------------------------------------------------------------
// ristretto255 via libsodium. Scalars are kept little-endian internally (the
// libsodium layout) and serialised big-endian.

// Group order ℓ = 2^252 + 27742317777372353535851937790883648493, little-endian.
constexpr std::array<uint8_t, 32> kOrderLe = {0xed, 0xd3, 0xf5, 0x5c, 0x1a, 0x63, 0x12, 0x58, 0xd6, 0x9c, 0xf7,
                                              0xa2, 0xde, 0xf9, 0xde, 0x14, 0,    0,    0,    0,    0,    0,
                                              0,    0,    0,    0,    0,    0,    0,    0,    0,    0x10};

class RealSuite final : public Suite {
 public:
  RealSuite() {
    ensure_sodium();
    g1_ = mul_base(scalar(1));
    auto h = sha512(to_bytes("asyncbft/ristretto255/g2"));
    crypto_core_ristretto255_from_hash(g2_.v.data(), h.data());
  }

  std::string_view name() const override { return "ristretto255"; }
  bool is_mock() const override { return false; }
  uint64_t mock_modulus() const override { throw ParameterError("real suite has no mock modulus"); }
  std::size_t scalar_bytes() const override { return 32; }
  std::size_t point_bytes() const override { return 32; }
  std::size_t hash_bytes() const override { return 32; }

  Scalar scalar(uint64_t v) const override {
    Scalar s;
    for (int i = 0; i < 8; ++i) s.v[i] = uint8_t(v >> (8 * i));
    return s;
  }
  Scalar add(const Scalar &a, const Scalar &b) const override {
    Scalar r;
    crypto_core_ristretto255_scalar_add(r.v.data(), a.v.data(), b.v.data());
    return r;
  }
  Scalar sub(const Scalar &a, const Scalar &b) const override {
    Scalar r;
    crypto_core_ristretto255_scalar_sub(r.v.data(), a.v.data(), b.v.data());
    return r;
  }
  Scalar mul(const Scalar &a, const Scalar &b) const override {
    Scalar r;
    crypto_core_ristretto255_scalar_mul(r.v.data(), a.v.data(), b.v.data());
    return r;
  }
  Scalar neg(const Scalar &a) const override {
    Scalar r;
    crypto_core_ristretto255_scalar_negate(r.v.data(), a.v.data());
    return r;
  }
  Scalar inv(const Scalar &a) const override {
    Scalar r;
    if (crypto_core_ristretto255_scalar_invert(r.v.data(), a.v.data()) != 0) throw ParameterError("inverse of zero");
    return r;
  }
  bool is_zero(const Scalar &a) const override { return sodium_is_zero(a.v.data(), a.v.size()); }
  Scalar random_scalar(Rng &rng) const override {
    std::array<uint8_t, 64> wide{};
    rng.fill(wide);
    Scalar r;
    crypto_core_ristretto255_scalar_reduce(r.v.data(), wide.data());
    return r;
  }
  Scalar hash_to_scalar(ByteSpan data) const override {
    auto wide = sha512(data);
    Scalar r;
    crypto_core_ristretto255_scalar_reduce(r.v.data(), wide.data());
    return r;
  }

  Point identity() const override { return Point{}; }
  Point g1() const override { return g1_; }
  Point g2() const override { return g2_; }
  Point add(const Point &a, const Point &b) const override {
    Point r;
    crypto_core_ristretto255_add(r.v.data(), a.v.data(), b.v.data());
    return r;
  }
  Point sub(const Point &a, const Point &b) const override {
    Point r;
    crypto_core_ristretto255_sub(r.v.data(), a.v.data(), b.v.data());
    return r;
  }
  Point mul(const Point &p, const Scalar &k) const override {
    // libsodium refuses to produce the identity; map that case back to it.
    Point r;
    if (is_zero(k) || p == identity()) return identity();
    if (p == g1_) return mul_base(k);
    if (crypto_scalarmult_ristretto255(r.v.data(), k.v.data(), p.v.data()) != 0) return identity();
    return r;
  }
  Point hash_to_point(ByteSpan data) const override {
    auto h = sha512(data);
    Point r;
    crypto_core_ristretto255_from_hash(r.v.data(), h.data());
    return r;
  }

  Bytes encode(const Scalar &s) const override { return Bytes(s.v.rbegin(), s.v.rend()); }
  Bytes encode(const Point &p) const override { return Bytes(p.v.begin(), p.v.end()); }
  std::optional<Scalar> decode_scalar(ByteSpan data) const override {
    if (data.size() != 32) return std::nullopt;
    Scalar s;
    std::reverse_copy(data.begin(), data.end(), s.v.begin());
    if (!canonical(s)) return std::nullopt;
    return s;
  }
  std::optional<Point> decode_point(ByteSpan data) const override {
    if (data.size() != 32) return std::nullopt;
    if (crypto_core_ristretto255_is_valid_point(data.data()) != 1) return std::nullopt;
    Point p;
    std::copy(data.begin(), data.end(), p.v.begin());
    return p;
  }

  SigKeyPair sig_keygen(Rng &rng) const override {
    std::array<uint8_t, crypto_sign_SEEDBYTES> seed{};
    rng.fill(seed);
    Bytes pk(crypto_sign_PUBLICKEYBYTES), sk(crypto_sign_SECRETKEYBYTES);
    crypto_sign_seed_keypair(pk.data(), sk.data(), seed.data());
    return {sk, pk};
  }
  Bytes sign(ByteSpan sk, ByteSpan msg) const override {
    if (sk.size() != crypto_sign_SECRETKEYBYTES) throw ParameterError("bad signing key");
    Bytes sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, msg.data(), msg.size(), sk.data());
    return sig;
  }
  bool verify(ByteSpan vk, ByteSpan msg, ByteSpan sig) const override {
    if (vk.size() != crypto_sign_PUBLICKEYBYTES || sig.size() != crypto_sign_BYTES) return false;
    return crypto_sign_verify_detached(sig.data(), msg.data(), msg.size(), vk.data()) == 0;
  }

  // ECVRF-style construction: Gamma = x·H(pk, input), with a DLEQ proof that
  // log_g1(pk) = log_H(Gamma); r = hash(Gamma).
  VrfKeyPair vrf_keygen(Rng &rng) const override {
    Scalar sk;
    do {
      sk = random_scalar(rng);
    } while (is_zero(sk));
    return {sk, mul_base(sk)};
  }
  VrfOutput vrf_eval(const VrfKeyPair &kp, ByteSpan input) const override {
    auto hp = vrf_base(kp.pk, input);
    auto gamma = mul(hp, kp.sk);
    auto proof = dleq_prove(*this, input, g1_, kp.pk, hp, gamma, kp.sk);
    Writer w;
    write(w, gamma);
    write_proof(*this, w, proof);
    return {vrf_r(gamma), std::move(w).take()};
  }
  bool vrf_verify(const Point &pk, ByteSpan input, const VrfOutput &out) const override {
    try {
      Reader rd(out.proof);
      auto gamma = read_point(rd);
      auto proof = read_proof(*this, rd);
      rd.expect_done();
      if (pk == identity() || gamma == identity()) return false;
      if (!dleq_verify(*this, input, g1_, pk, vrf_base(pk, input), gamma, proof)) return false;
      return out.r == vrf_r(gamma);
    } catch (const DecodeError &) {
      return false;
    }
  }

 private:
  Point mul_base(const Scalar &k) const {
    Point r;
    if (is_zero(k) || crypto_scalarmult_ristretto255_base(r.v.data(), k.v.data()) != 0) return identity();
    return r;
  }
  static bool canonical(const Scalar &s) {
    for (int i = 31; i >= 0; --i) {
      if (s.v[i] < kOrderLe[i]) return true;
      if (s.v[i] > kOrderLe[i]) return false;
    }
    return false;
  }
  Point vrf_base(const Point &pk, ByteSpan input) const { return hash_to_point(tagged("vrf-base", {encode(pk), input})); }
  Bytes vrf_r(const Point &gamma) const { return hash(tagged("vrf-out", {encode(gamma)})); }

  Point g1_, g2_;
};

}  // namespace

Bytes Suite::hash(ByteSpan data) const {
  auto d = sha256(data);
  return Bytes(d.begin(), d.begin() + hash_bytes());
}

Bytes Suite::hash_n(ByteSpan data, std::size_t len) const {
  Bytes out;
  out.reserve(len + 32);
  for (uint32_t ctr = 0; out.size() < len; ++ctr) {
    Writer w;
    w.u32(ctr).raw(data);
    auto d = sha256(w.data());
    out.insert(out.end(), d.begin(), d.end());
  }
  out.resize(len);
  return out;
}

Scalar Suite::read_scalar(Reader &r) const {
  auto at = r.offset();
  auto s = decode_scalar(r.raw(scalar_bytes()));
  if (!s) throw DecodeError("non-canonical scalar", at);
  return *s;
}

Point Suite::read_point(Reader &r) const {
  auto at = r.offset();
  auto p = decode_point(r.raw(point_bytes()));
  if (!p) throw DecodeError("invalid group element", at);
  return *p;
}

SuitePtr make_mock_suite(uint64_t q, uint64_t g1, uint64_t g2) { return std::make_shared<MockSuite>(q, g1, g2); }

SuitePtr make_real_suite() {
  static SuitePtr shared = std::make_shared<RealSuite>();
  return shared;
}

int compare_be(ByteSpan a, ByteSpan b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  int c = a.empty() ? 0 : std::memcmp(a.data(), b.data(), a.size());
  return (c > 0) - (c < 0);
}

}  // namespace asyncbft::crypto
