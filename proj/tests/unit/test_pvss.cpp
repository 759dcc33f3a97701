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

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "asyncbft/crypto/polynomial.hpp"
#include "asyncbft/pvss.hpp"
#include "doctest.h"

using namespace asyncbft;
using namespace asyncbft::crypto;

namespace {

struct Fixture {
  SuitePtr suite;
  KeyRing ring;
  pvss::Params p;

  Fixture(SuitePtr s, uint32_t n, uint32_t f, uint64_t seed = 1)
      : suite{s}, ring{make_ring(s, n, seed)}, p{n, f, "pvss-test"} {}

  static KeyRing make_ring(SuitePtr s, uint32_t n, uint64_t seed) {
    Rng rng(seed);
    return KeyRing::generate(s, n, rng);
  }
  const KeyDirectory &dir() const { return *ring.directory(); }

  pvss::Script deal(PartyId i, uint64_t secret, Rng &rng) const {
    return pvss::deal(p, dir(), i, ring.secret(i), suite->scalar(secret), rng);
  }
  std::vector<pvss::Share> all_shares(const pvss::Script &s) const {
    std::vector<pvss::Share> out;
    for (PartyId j = 1; j <= p.n; ++j) out.push_back(pvss::get_share(p, *suite, j, ring.secret(j), s));
    return out;
  }
};

// All k-subsets of {0..n-1}.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace

TEST_CASE("deal: verifies and carries a single weight") {
  Fixture fx(make_mock_suite(97), 4, 1);
  Rng rng(2);
  auto s = fx.deal(3, 9, rng);
  CHECK(pvss::vrfy_script(fx.p, fx.dir(), s));
  CHECK(pvss::weights(fx.p, s) == std::vector<uint32_t>{0, 0, 1, 0});
}

TEST_CASE("mock q=31: every 2f+1 subset of decrypted shares reconstructs 9") {
  Fixture fx(make_mock_suite(31, 2, 3), 4, 1);
  Rng rng(3);
  auto s = fx.deal(1, 9, rng);
  REQUIRE(pvss::vrfy_script(fx.p, fx.dir(), s));
  auto shares = fx.all_shares(s);
  auto expected = fx.suite->mul_g2(fx.suite->scalar(9));  // 9·3 = 27 in the additive mock group
  for (const auto &sub : subsets(4, 3)) {
    std::vector<pvss::Share> pick;
    for (int k : sub) pick.push_back(shares[k]);
    CHECK(pvss::agg_shares(fx.p, fx.dir(), s, pick) == expected);
    CHECK(pvss::vrfy_secret(fx.p, fx.dir(), expected, pick, s));
    CHECK_FALSE(pvss::vrfy_secret(fx.p, fx.dir(), fx.suite->add(expected, fx.suite->g2()), pick, s));
  }
}

TEST_CASE("vrfy_script rejects tampering") {
  // Mock proofs are sound only up to 1/q, so the mock pass uses a large q.
  for (auto suite : {make_mock_suite(1000003), make_real_suite()}) {
    Fixture fx(suite, 4, 1);
    Rng rng(4);
    auto s = fx.deal(2, 5, rng);
    REQUIRE(pvss::vrfy_script(fx.p, fx.dir(), s));

    auto junk = s;
    junk.enc[1] = suite->add(junk.enc[1], suite->g1());
    CHECK_FALSE(pvss::vrfy_script(fx.p, fx.dir(), junk));

    auto stripped = s;
    stripped.attestations.clear();
    CHECK_FALSE(pvss::vrfy_script(fx.p, fx.dir(), stripped));

    auto high_degree = s;
    high_degree.v[3] = suite->add(high_degree.v[3], suite->g1());
    CHECK_FALSE(pvss::vrfy_script(fx.p, fx.dir(), high_degree));

    auto relabeled = s;
    relabeled.attestations[0].dealer = 3;
    CHECK_FALSE(pvss::vrfy_script(fx.p, fx.dir(), relabeled));

    // Aggregate with one attestation removed: weight claims no longer match.
    auto agg = pvss::agg_scripts(fx.p, fx.dir(), s, fx.deal(4, 6, rng));
    REQUIRE(pvss::vrfy_script(fx.p, fx.dir(), agg));
    for (std::size_t k = 0; k < agg.attestations.size(); ++k) {
      auto m = agg;
      m.attestations.erase(m.attestations.begin() + long(k));
      CHECK_FALSE(pvss::vrfy_script(fx.p, fx.dir(), m));
    }

    CHECK(pvss::decode(*suite, pvss::encode(*suite, agg), 4).attestations.size() == 2);
    auto bytes = pvss::encode(*suite, s);
    CHECK(pvss::script_hash(*suite, pvss::decode(*suite, bytes, 4)) == pvss::script_hash(*suite, s));
    bytes.pop_back();
    CHECK_THROWS_AS(pvss::decode(*suite, bytes, 4), DecodeError);
  }
}

TEST_CASE("shares: honest verify, wrong key fails") {
  for (auto suite : {make_mock_suite(97), make_real_suite()}) {
    Fixture fx(suite, 4, 1);
    Rng rng(5);
    auto s = fx.deal(1, 3, rng);
    for (PartyId j = 1; j <= 4; ++j) {
      auto sh = pvss::get_share(fx.p, *suite, j, fx.ring.secret(j), s);
      CHECK(pvss::vrfy_share(fx.p, fx.dir(), j, sh, s));
      auto other = pvss::get_share(fx.p, *suite, j, fx.ring.secret(j % 4 + 1), s);
      CHECK_FALSE(pvss::vrfy_share(fx.p, fx.dir(), j, other, s));
    }
  }
}

TEST_CASE("mock exhaustive: exactly one share value satisfies the decryption relation") {
  // Mock proofs have soundness error 1/q, so uniqueness is checked on the
  // relation the proof attests to: enc_j == dk_j · S.
  Fixture fx(make_mock_suite(31, 2, 3), 4, 1);
  Rng rng(6);
  auto s = fx.deal(2, 7, rng);
  for (PartyId j = 1; j <= 4; ++j) {
    int count = 0;
    for (uint64_t v = 0; v < 31; ++v) {
      auto cand = fx.suite->decode_point(Bytes{0, 0, 0, uint8_t(v)});
      count += fx.suite->mul(*cand, fx.ring.secret(j).pvss_dk) == s.enc[j - 1];
    }
    CHECK(count == 1);
  }
}

TEST_CASE("aggregation: secrets add, weights add, order does not matter") {
  Fixture fx(make_mock_suite(31, 2, 3), 4, 1);
  Rng rng(7);
  auto a = fx.deal(1, 2, rng), b = fx.deal(2, 5, rng);
  auto ab = pvss::agg_scripts(fx.p, fx.dir(), a, b);
  auto ba = pvss::agg_scripts(fx.p, fx.dir(), b, a);
  REQUIRE(pvss::vrfy_script(fx.p, fx.dir(), ab));
  CHECK(pvss::weights(fx.p, ab) == std::vector<uint32_t>{1, 1, 0, 0});
  auto sh_ab = fx.all_shares(ab), sh_ba = fx.all_shares(ba);
  sh_ab.pop_back();
  sh_ba.erase(sh_ba.begin());
  auto seven = fx.suite->mul_g2(fx.suite->scalar(7));
  CHECK(pvss::agg_shares(fx.p, fx.dir(), ab, sh_ab) == seven);
  CHECK(pvss::agg_shares(fx.p, fx.dir(), ba, sh_ba) == seven);

  auto bad = a;
  bad.v[0] = fx.suite->add(bad.v[0], fx.suite->g1());
  CHECK_THROWS_AS(pvss::agg_scripts(fx.p, fx.dir(), bad, b), ParameterError);
  CHECK_THROWS_AS(pvss::agg_shares(fx.p, fx.dir(), ab, {sh_ab[0], sh_ab[1]}), ParameterError);
  CHECK_THROWS_AS(pvss::agg_shares(fx.p, fx.dir(), ab, {sh_ab[0], sh_ab[1], sh_ab[1]}), ParameterError);
}

TEST_CASE("weight additivity over random aggregation trees") {
  Fixture fx(make_mock_suite(97), 7, 2);
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<pvss::Script, uint64_t>> pool;
    std::vector<uint32_t> expect(7, 0);
    uint64_t total = 0;
    auto count = 1 + rng.uniform(7);
    for (uint64_t k = 0; k < count; ++k) {
      PartyId d = PartyId(1 + rng.uniform(7));
      uint64_t sec = rng.uniform(97);
      pool.push_back({fx.deal(d, sec, rng), sec});
      expect[d - 1]++;
      total += sec;
    }
    while (pool.size() > 1) {
      auto i = rng.uniform(pool.size());
      auto x = pool[i];
      pool.erase(pool.begin() + long(i));
      auto j = rng.uniform(pool.size());
      pool[j].first = pvss::agg_scripts(fx.p, fx.dir(), x.first, pool[j].first);
    }
    const auto &s = pool[0].first;
    REQUIRE(pvss::vrfy_script(fx.p, fx.dir(), s));
    CHECK(pvss::weights(fx.p, s) == expect);
    auto shares = fx.all_shares(s);
    shares.resize(fx.p.t());
    CHECK(pvss::agg_shares(fx.p, fx.dir(), s, shares) == fx.suite->mul_g2(fx.suite->scalar(total)));
  }
}

TEST_CASE("weak secrecy: f honest shares plus f corrupt shares leave every secret possible") {
  // Sharing layer only: F has degree 2f, the adversary sees f corrupt shares
  // and t-f-1 = f honest ones, i.e. 2f evaluations. Count, for each candidate
  // secret, the degree-2f polynomials through those 2f points.
  const uint64_t q = 11;
  auto suite = make_mock_suite(q, 2, 3);
  Fixture fx(suite, 4, 1);
  Rng rng(9);
  auto s = fx.deal(1, 4, rng);
  auto shares = fx.all_shares(s);
  // Party 4 corrupt (knows its share); party 1 honest share released.
  std::vector<std::pair<uint32_t, Point>> known = {{1, shares[0].value}, {4, shares[3].value}};
  std::map<uint64_t, int> consistent;
  for (uint64_t s0 = 0; s0 < q; ++s0) {
    for (uint64_t c1 = 0; c1 < q; ++c1)
      for (uint64_t c2 = 0; c2 < q; ++c2) {
        Polynomial F{suite->scalar(s0), suite->scalar(c1), suite->scalar(c2)};
        bool ok = true;
        for (auto [j, val] : known) ok = ok && suite->mul_g2(evaluate(*suite, F, j)) == val;
        if (ok) consistent[s0]++;
      }
  }
  CHECK(consistent.size() == q);
  for (auto [sec, c] : consistent) CHECK(c == 1);
}

TEST_CASE("unpredictability structure: f corrupt scripts plus one honest script") {
  // The adversary knows its own polynomials entirely and holds f honest shares
  // of the aggregate; the honest contribution keeps every aggregate secret
  // equally likely.
  const uint64_t q = 11;
  auto suite = make_mock_suite(q, 2, 3);
  Fixture fx(suite, 4, 1);
  Rng rng(10);
  auto corrupt = fx.deal(4, 6, rng);
  auto honest = fx.deal(2, 3, rng);
  auto agg = pvss::agg_scripts(fx.p, fx.dir(), corrupt, honest);
  auto shares = fx.all_shares(agg);
  auto corrupt_shares = fx.all_shares(corrupt);
  // Known: aggregate shares for party 4 (own) minus its own contribution gives
  // the honest polynomial at 4; plus one released honest share at index 1.
  std::vector<std::pair<uint32_t, Point>> honest_pts = {
      {4, suite->sub(shares[3].value, corrupt_shares[3].value)},
      {1, suite->sub(shares[0].value, corrupt_shares[0].value)}};
  std::set<uint64_t> candidates;
  for (uint64_t s0 = 0; s0 < q; ++s0)
    for (uint64_t c1 = 0; c1 < q; ++c1)
      for (uint64_t c2 = 0; c2 < q; ++c2) {
        Polynomial F{suite->scalar(s0), suite->scalar(c1), suite->scalar(c2)};
        bool ok = true;
        for (auto [j, val] : honest_pts) ok = ok && suite->mul_g2(evaluate(*suite, F, j)) == val;
        if (ok) candidates.insert((s0 + 6) % q);
      }
  CHECK(candidates.size() == q);
}
