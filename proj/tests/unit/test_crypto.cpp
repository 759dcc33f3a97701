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

#include <map>
#include <set>

#include "asyncbft/crypto/keys.hpp"
#include "asyncbft/crypto/polynomial.hpp"
#include "asyncbft/crypto/proofs.hpp"
#include "doctest.h"

using namespace asyncbft;
using namespace asyncbft::crypto;

namespace {

// Plain integer arithmetic mod q, written independently of the suite.
uint64_t modq(int64_t v, uint64_t q) { return uint64_t(((v % int64_t(q)) + int64_t(q)) % int64_t(q)); }

uint64_t mock_value(const Suite &s, const Scalar &x) {
  auto b = s.encode(x);
  return (uint64_t(b[0]) << 24) | (uint64_t(b[1]) << 16) | (uint64_t(b[2]) << 8) | b[3];
}
uint64_t mock_value(const Suite &s, const Point &x) {
  auto b = s.encode(x);
  return (uint64_t(b[0]) << 24) | (uint64_t(b[1]) << 16) | (uint64_t(b[2]) << 8) | b[3];
}

}  // namespace

TEST_CASE("mock suite arithmetic matches integer arithmetic mod q") {
  auto s = make_mock_suite(31, 2, 3);
  for (int64_t a = 0; a < 31; ++a) {
    for (int64_t b = 0; b < 31; ++b) {
      CHECK(mock_value(*s, s->add(s->scalar(a), s->scalar(b))) == modq(a + b, 31));
      CHECK(mock_value(*s, s->sub(s->scalar(a), s->scalar(b))) == modq(a - b, 31));
      CHECK(mock_value(*s, s->mul(s->scalar(a), s->scalar(b))) == modq(a * b, 31));
    }
    if (a != 0) CHECK(mock_value(*s, s->mul(s->scalar(a), s->inv(s->scalar(a)))) == 1);
  }
  CHECK_THROWS_AS(s->inv(s->scalar(0)), ParameterError);
  CHECK_THROWS_AS(make_mock_suite(33), ParameterError);
}

TEST_CASE("real suite basic identities") {
  auto s = make_real_suite();
  Rng rng(7);
  auto a = s->random_scalar(rng), b = s->random_scalar(rng);
  CHECK(s->add(s->mul_g1(a), s->mul_g1(b)) == s->mul_g1(s->add(a, b)));
  CHECK(s->mul(s->mul_g2(a), b) == s->mul_g2(s->mul(a, b)));
  CHECK(s->mul_g1(s->scalar(0)) == s->identity());
  CHECK(s->sub(s->g1(), s->g1()) == s->identity());
  CHECK(s->g1() != s->g2());
  auto enc = s->encode(a);
  REQUIRE(enc.size() == 32);
  CHECK(s->decode_scalar(enc) == a);
  Bytes order_be = from_hex("1000000000000000000000000000000014def9dea2f79cd65812631a5cf5d3ed");
  CHECK_FALSE(s->decode_scalar(order_be).has_value());
  CHECK(s->decode_point(s->encode(s->g2())) == s->g2());
  Bytes junk(32, 0xff);
  CHECK_FALSE(s->decode_point(junk).has_value());
}

TEST_CASE("shamir_share examples") {
  auto s = make_mock_suite(31, 2, 3);
  SUBCASE("degree zero: every share equals the secret") {
    Rng rng(1);
    auto sh = shamir_share(*s, s->scalar(5), 0, 3, rng);
    for (const auto &p : sh.shares) CHECK(mock_value(*s, p.a) == 5);
  }
  SUBCASE("forced A(x) = 5 + 3x") {
    auto sh = share_polynomials(*s, {s->scalar(5), s->scalar(3)}, {s->scalar(0), s->scalar(0)}, 4);
    std::vector<uint64_t> got;
    for (const auto &p : sh.shares) got.push_back(mock_value(*s, p.a));
    // 5 + 3i for i = 1..4
    CHECK(got == std::vector<uint64_t>{8, 11, 14, 17});
  }
  SUBCASE("n < 3f+1 rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(shamir_share(*s, s->scalar(5), 1, 3, rng), ParameterError);
  }
}

TEST_CASE("interpolate_at_zero examples") {
  auto s = make_mock_suite(31, 2, 3);
  // Line through (1,8),(2,11): slope 3, intercept 8-3 = 5.
  CHECK(mock_value(*s, interpolate_at_zero(*s, {{1, s->scalar(8)}, {2, s->scalar(11)}}, 1)) == 5);
  CHECK(mock_value(*s, interpolate_at_zero(*s, {{3, s->scalar(7)}}, 0)) == 7);
  CHECK_THROWS_AS(interpolate_at_zero(*s, {{1, s->scalar(8)}, {1, s->scalar(11)}}, 1), ParameterError);
  CHECK_THROWS_AS(interpolate_at_zero(*s, {{1, s->scalar(8)}}, 1), ParameterError);
  CHECK_THROWS_AS(interpolate_at_zero(*s, {{0, s->scalar(8)}, {2, s->scalar(1)}}, 1), ParameterError);
}

TEST_CASE("round trip over random cases, f in [0,4]") {
  for (auto suite : {make_mock_suite(97), make_real_suite()}) {
    Rng rng(11);
    int cases = suite->is_mock() ? 500 : 50;
    for (int t = 0; t < cases; ++t) {
      uint32_t f = uint32_t(t % 5), n = 3 * f + 1;
      auto secret = suite->random_scalar(rng);
      auto sh = shamir_share(*suite, secret, f, n, rng);
      // pick f+1 distinct indices
      std::vector<uint32_t> idx(n);
      for (uint32_t i = 0; i < n; ++i) idx[i] = i + 1;
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<std::pair<uint32_t, Scalar>> pts;
      for (uint32_t k = 0; k <= f; ++k) pts.push_back({idx[k], sh.shares[idx[k] - 1].a});
      REQUIRE(interpolate_at_zero(*suite, pts, f) == secret);
    }
  }
}

TEST_CASE("pedersen commitment examples") {
  auto s = make_mock_suite(31, 2, 3);
  auto zero = s->scalar(0);
  auto C0 = pedersen_commit(*s, {zero, zero}, {zero, zero});
  for (const auto &c : C0) CHECK(c == s->identity());
  // 5·2 + 7·3 = 31 ≡ 0 mod 31
  auto C = pedersen_commit(*s, {s->scalar(5)}, {s->scalar(7)});
  CHECK(mock_value(*s, C[0]) == 0);
  CHECK_THROWS_AS(pedersen_commit(*s, {zero, zero}, {zero}), ParameterError);

  for (auto suite : {make_mock_suite(97), make_real_suite()}) {
    Rng rng(3);
    auto sh = shamir_share(*suite, suite->random_scalar(rng), 2, 7, rng);
    auto cm = pedersen_commit(*suite, sh.A, sh.B);
    for (const auto &p : sh.shares) {
      CHECK(verify_opening(*suite, p.index, p.a, p.b, cm));
      CHECK_FALSE(verify_opening(*suite, p.index, suite->add(p.a, suite->scalar(1)), p.b, cm));
    }
    CHECK_FALSE(verify_opening(*suite, 0, sh.shares[0].a, sh.shares[0].b, cm));
  }
}

TEST_CASE("mock exhaustive: exactly q opening pairs verify per index") {
  const uint64_t q = 31;
  auto s = make_mock_suite(q, 2, 3);
  Rng rng(5);
  auto sh = shamir_share(*s, s->random_scalar(rng), 1, 4, rng);
  auto cm = pedersen_commit(*s, sh.A, sh.B);
  for (uint32_t i = 1; i <= 4; ++i) {
    int count = 0;
    for (uint64_t a = 0; a < q; ++a)
      for (uint64_t b = 0; b < q; ++b) count += verify_opening(*s, i, s->scalar(a), s->scalar(b), cm);
    CHECK(count == int(q));
  }
}

TEST_CASE("perfect hiding: every candidate secret has the same number of completions") {
  // f verified share pairs of a random (A, B) plus the commitment; count the
  // (A', B') consistent with both, grouped by A'(0). Over Z_q with f = 1 the
  // unknowns are (a0, a1, b0, b1): brute force all q^4.
  const uint64_t q = 13;
  auto s = make_mock_suite(q, 2, 3);
  Rng rng(9);
  auto sh = shamir_share(*s, s->random_scalar(rng), 1, 4, rng);
  auto cm = pedersen_commit(*s, sh.A, sh.B);
  const auto &seen = sh.shares[0];  // the adversary's single share (f = 1)
  std::map<uint64_t, int> per_secret;
  for (uint64_t a0 = 0; a0 < q; ++a0)
    for (uint64_t a1 = 0; a1 < q; ++a1)
      for (uint64_t b0 = 0; b0 < q; ++b0)
        for (uint64_t b1 = 0; b1 < q; ++b1) {
          Polynomial A{s->scalar(a0), s->scalar(a1)}, B{s->scalar(b0), s->scalar(b1)};
          if (pedersen_commit(*s, A, B) != cm) continue;
          if (evaluate(*s, A, 1) != seen.a || evaluate(*s, B, 1) != seen.b) continue;
          per_secret[a0]++;
        }
  REQUIRE(per_secret.size() == q);
  for (auto [secret, count] : per_secret) CHECK(count == per_secret.begin()->second);
}

TEST_CASE("signatures") {
  for (auto suite : {make_mock_suite(), make_real_suite()}) {
    Rng rng(2);
    auto ring = KeyRing::generate(suite, 4, rng);
    auto msg = to_bytes("hello");
    auto sig = ring.sign(1, "inst", msg);
    const auto &dir = *ring.directory();
    CHECK(dir.verify_sig(1, "inst", msg, sig));
    CHECK_FALSE(dir.verify_sig(2, "inst", msg, sig));
    CHECK_FALSE(dir.verify_sig(1, "other", msg, sig));
    auto flipped = msg;
    flipped[0] ^= 1;
    CHECK_FALSE(dir.verify_sig(1, "inst", flipped, sig));
    CHECK_THROWS_AS(ring.sign(9, "inst", msg), ParameterError);
    CHECK_THROWS_AS(dir.verify_sig(0, "inst", msg, sig), ParameterError);
  }
}

TEST_CASE("vrf round trip, determinism, uniqueness") {
  for (auto suite : {make_mock_suite(), make_real_suite()}) {
    Rng rng(4);
    auto ring = KeyRing::generate(suite, 4, rng);
    const auto &dir = *ring.directory();
    auto seed = to_bytes("seed");
    auto out = ring.vrf_eval(2, "inst", seed);
    CHECK(out.r.size() == suite->hash_bytes());
    CHECK(dir.vrf_verify(2, "inst", seed, out));
    CHECK(ring.vrf_eval(2, "inst", seed) == out);
    CHECK_FALSE(dir.vrf_verify(3, "inst", seed, out));
    CHECK_FALSE(dir.vrf_verify(2, "inst2", seed, out));
    auto other = out;
    other.r[0] ^= 1;
    CHECK_FALSE(dir.vrf_verify(2, "inst", seed, other));
    CHECK_THROWS_AS(ring.vrf_eval(5, "inst", seed), ParameterError);
  }
}

TEST_CASE("mock vrf lowest bit is balanced over 10,000 seeds") {
  auto suite = make_mock_suite();
  Rng rng(12);
  auto ring = KeyRing::generate(suite, 4, rng);
  int ones = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    Bytes seed(8);
    rng.fill(seed);
    ones += ring.vrf_eval(1, "coin", seed).r.back() & 1;
  }
  double frac = double(ones) / trials;
  CHECK(frac > 0.48);
  CHECK(frac < 0.52);
}

TEST_CASE("dleq and schnorr proofs") {
  for (auto suite : {make_mock_suite(1000003), make_real_suite()}) {
    Rng rng(8);
    auto x = suite->random_scalar(rng);
    auto h = suite->hash_to_point(to_bytes("h"));
    auto X = suite->mul_g1(x), Y = suite->mul(h, x);
    auto ctx = to_bytes("ctx");
    auto p = dleq_prove(*suite, ctx, suite->g1(), X, h, Y, x);
    CHECK(dleq_verify(*suite, ctx, suite->g1(), X, h, Y, p));
    CHECK_FALSE(dleq_verify(*suite, ctx, suite->g1(), X, h, suite->add(Y, suite->g1()), p));
    CHECK_FALSE(dleq_verify(*suite, to_bytes("other"), suite->g1(), X, h, Y, p));
    auto sp = schnorr_prove(*suite, ctx, suite->g2(), suite->mul_g2(x), x);
    CHECK(schnorr_verify(*suite, ctx, suite->g2(), suite->mul_g2(x), sp));
    CHECK_FALSE(schnorr_verify(*suite, ctx, suite->g2(), suite->mul_g1(x), sp));
  }
}

TEST_CASE("hex and reader error offsets") {
  CHECK(to_hex(from_hex("00ff10")) == "00ff10");
  CHECK_THROWS_AS(from_hex("0"), ParameterError);
  Bytes data{0, 0, 0, 9, 1};
  Reader r(data);
  try {
    r.bytes();
    FAIL("expected DecodeError");
  } catch (const DecodeError &e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("rng determinism and forks") {
  Rng a(1), b(1);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.fork("x").next_u64() == b.fork("x").next_u64());
  CHECK(a.fork("x").next_u64() != a.fork("y").next_u64());
  for (int i = 0; i < 1000; ++i) CHECK(a.uniform(7) < 7);
}
