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

#include <doctest.h>

#include "asyncbft/protocol/adversary.hpp"
#include "asyncbft/protocol/coin.hpp"
#include "helpers.hpp"

using namespace asyncbft;
using namespace asyncbft::protocol;

namespace {

CoinConfig genesis() {
  CoinConfig c;
  c.mode = CoinMode::Genesis;
  c.genesis_nonce = to_bytes("genesis");
  return c;
}

CoinConfig seeding() {
  CoinConfig c;
  c.mode = CoinMode::Seeding;
  return c;
}

// Checks the core-set property at every honest Commit acceptance, and the
// candidate count at every honest output.
struct CoreSetProbe final : Probe {
  uint32_t f = 0;
  std::set<PartyId> corrupt;
  std::map<PartyId, std::set<PartyId>> s;
  std::map<Bytes, std::vector<PartyId>> signed_sets;
  int checks = 0, violations = 0;
  std::vector<std::size_t> c_sizes;

  void coin_set(PartyId p, const std::string &, const std::set<PartyId> &set) override { s[p] = set; }
  void coin_lock_signed(PartyId, const std::string &, const Bytes &h, const std::vector<PartyId> &set) override {
    signed_sets[h] = set;
  }
  void coin_commit_accepted(PartyId, const std::string &, const Bytes &h) override {
    ++checks;
    auto it = signed_sets.find(h);
    if (it == signed_sets.end()) {
      ++violations;  // nobody honest ever signed this set
      return;
    }
    uint32_t holders = 0;
    for (const auto &[q, local] : s) {
      if (corrupt.contains(q)) continue;
      bool sub = std::all_of(it->second.begin(), it->second.end(), [&](PartyId k) { return local.contains(k); });
      holders += sub;
    }
    if (holders < f + 1) ++violations;
  }
  void coin_output(PartyId, const std::string &, std::size_t c, std::size_t) override { c_sizes.push_back(c); }
};

struct CoinRun {
  sim::RunResult result;
  std::size_t honest_out = 0;
  std::set<uint8_t> bits;
  bool common = false;
};

CoinRun run_coin(uint32_t n, uint32_t f, uint64_t seed, const CoinConfig &cfg, bool starve, CoreSetProbe *probe = nullptr,
                 bool record = false, crypto::SuitePtr suite = crypto::make_mock_suite()) {
  World w(suite, n, f, seed);
  StarvePlan plan = starve ? starve_plan(n, f) : StarvePlan{};
  if (probe) {
    probe->f = f;
    probe->corrupt = plan.corrupt;
  }
  auto sched = starve ? sim::make_delay_targets(starve_sharing(plan), "starve") : sim::make_random();
  CoinRun out;
  out.result = testing::run_world(
      w,
      [&](World &w, PartyId p) -> std::unique_ptr<sim::Node> {
        bool bad = plan.corrupt.contains(p);
        auto node = make_node(std::make_unique<Coin>(w.context(p, bad ? nullptr : probe), "coin", cfg), encode_coin_output);
        if (bad) return std::make_unique<TamperNode>(std::move(node), bottom_candidates(plan.victims), Rng(seed));
        return node;
      },
      plan.corrupt, std::move(sched), seed, record);
  for (PartyId p = 1; p <= n; ++p) {
    if (plan.corrupt.contains(p) || !out.result.outputs[p - 1]) continue;
    out.bits.insert((*out.result.outputs[p - 1])[0]);
    ++out.honest_out;
  }
  out.common = out.bits.size() == 1 && out.honest_out == n - plan.corrupt.size();
  return out;
}

std::set<std::string> instances(const std::vector<Message> &msgs) {
  std::set<std::string> out;
  for (const auto &m : msgs) out.insert(m.instance);
  return out;
}

}  // namespace

TEST_CASE("coin init") {
  World w(crypto::make_mock_suite(), 4, 1, 0);
  SUBCASE("genesis deals immediately") {
    Coin c(w.context(2), "coin", genesis());
    auto st = c.start();
    CHECK(instances(st.out) == std::set<std::string>{"coin/a2"});
    for (PartyId j = 1; j <= 4; ++j) CHECK(c.seed(j) == to_bytes("genesis"));
  }
  SUBCASE("seeding activates n seeding children") {
    Coin c(w.context(2), "coin", seeding());
    auto st = c.start();
    CHECK(instances(st.out) == std::set<std::string>{"coin/s1", "coin/s2", "coin/s3", "coin/s4"});
    CHECK(!c.seed(1));
  }
  SUBCASE("mode and nonce must match") {
    auto bad = genesis();
    bad.genesis_nonce.clear();
    CHECK_THROWS_AS(Coin(w.context(1), "coin", bad), ParameterError);
    auto bad2 = seeding();
    bad2.genesis_nonce = to_bytes("x");
    CHECK_THROWS_AS(Coin(w.context(1), "coin", bad2), ParameterError);
  }
}

TEST_CASE("vrf triples order by value then lower dealer") {
  VrfTriple a{1, Bytes{5, 0}, {}}, b{2, Bytes{5, 0}, {}}, c{3, Bytes{5, 1}, {}};
  CHECK(triple_less(b, a));
  CHECK(!triple_less(a, b));
  CHECK(triple_less(a, c));
  auto back = decode_triple(encode_triple(c));
  CHECK(back.dealer == 3);
  CHECK(back.r == c.r);
  CHECK_THROWS_AS(decode_triple(Bytes{1, 2}), DecodeError);
}

TEST_CASE("coin terminates with a common bit in honest runs") {
  CoreSetProbe probe;
  int common = 0, ones = 0, trials = 300;
  for (int s = 0; s < trials; ++s) {
    auto r = run_coin(4, 1, uint64_t(s), genesis(), false, &probe);
    CHECK(r.result.quiescent);
    CHECK(r.honest_out == 4);
    common += r.common;
    if (r.common) ones += *r.bits.begin();
  }
  CHECK(probe.violations == 0);
  CHECK(probe.checks > 0);
  for (auto c : probe.c_sizes) CHECK(c >= 2);  // n - 2f
  CHECK(double(common) / trials >= 0.60);
  CHECK(double(ones) / common == doctest::Approx(0.5).epsilon(0.12));
}

TEST_CASE("coin under the starving adversary") {
  CoreSetProbe probe;
  int common = 0, trials = 300;
  for (int s = 0; s < trials; ++s) {
    auto r = run_coin(4, 1, uint64_t(s), genesis(), true, &probe);
    CHECK(r.result.quiescent);
    CHECK(r.honest_out == 3);
    common += r.common;
  }
  MESSAGE("common rate under starvation " << double(common) / trials);
  CHECK(probe.violations == 0);
  for (auto c : probe.c_sizes) CHECK(c >= 2);
  CHECK(double(common) / trials >= 1.0 / 3 - 0.05);
  CHECK(common < trials);  // the attack does bite
}

TEST_CASE("coin with seeding and larger n") {
  for (uint64_t s = 0; s < 6; ++s) {
    CoreSetProbe probe;
    auto r = run_coin(4, 1, s, seeding(), s % 2 == 1, &probe);
    CHECK(r.result.quiescent);
    CHECK(r.honest_out == (s % 2 ? 3u : 4u));
    CHECK(probe.violations == 0);
  }
  for (uint64_t s = 0; s < 3; ++s) {
    CoreSetProbe probe;
    auto r = run_coin(7, 2, s, genesis(), true, &probe);
    CHECK(r.honest_out == 5);
    CHECK(probe.violations == 0);
    for (auto c : probe.c_sizes) CHECK(c >= 3);
  }
  auto r = run_coin(4, 1, 1, genesis(), false, nullptr, false, crypto::make_real_suite());
  CHECK(r.honest_out == 4);
}

TEST_CASE("honest evaluations stay hidden until the reconstruction set is fixed") {
  for (uint64_t s = 0; s < 20; ++s) {
    auto r = run_coin(4, 1, s, genesis(), s % 2 == 1, nullptr, true);
    REQUIRE(r.result.transcript);
    std::map<PartyId, uint64_t> commit_at;
    for (const auto &e : r.result.transcript->events) {
      const auto &v = e.env;
      if (v.tag == Tag::Commit && v.instance == "coin" && !commit_at.contains(v.to)) commit_at[v.to] = e.step;
    }
    auto corrupt = s % 2 ? starve_plan(4, 1).corrupt : std::set<PartyId>{};
    for (const auto &e : r.result.transcript->events) {
      const auto &v = e.env;
      if (corrupt.contains(v.from)) continue;
      if (v.tag == Tag::Candidate || v.tag == Tag::KeyRec || v.tag == Tag::RecRequest) {
        REQUIRE(commit_at.contains(v.from));
        CHECK(v.sent_event >= commit_at[v.from]);
      }
    }
  }
}

TEST_CASE("the output bit is unpredictable to a fixed guess") {
  int hit = 0, trials = 300;
  for (int s = 0; s < trials; ++s) {
    auto r = run_coin(4, 1, uint64_t(1000 + s), genesis(), false);
    hit += r.bits.contains(0);
  }
  CHECK(double(hit) / trials <= 1.0 - 1.0 / 6 + 0.05);
}

TEST_CASE("distinct coin ids give independent evaluations") {
  World w(crypto::make_mock_suite(), 4, 1, 0);
  auto a = w.ring().vrf_eval(1, "coin-a", to_bytes("genesis"));
  auto b = w.ring().vrf_eval(1, "coin-b", to_bytes("genesis"));
  CHECK(a.r != b.r);
}
