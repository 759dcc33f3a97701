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

#include "asyncbft/harness/stats.hpp"
#include "asyncbft/protocol/adversary.hpp"
#include "asyncbft/protocol/election.hpp"
#include "helpers.hpp"

using namespace asyncbft;
using namespace asyncbft::protocol;

namespace {

ElectionConfig config() {
  ElectionConfig c;
  c.coin.mode = CoinMode::Genesis;
  c.coin.genesis_nonce = to_bytes("genesis");
  return c;
}

enum class Attack { None, Forge, Starve };

struct ElectionRun {
  std::set<Bytes> outputs;
  std::size_t honest_out = 0;
  bool quiescent = false;
  std::vector<ReactorNode<Election> *> nodes;  // honest only, valid while `live` lives
  testing::LiveRun live;
  std::set<PartyId> corrupt;
  std::optional<PartyId> index() const {
    if (outputs.size() != 1) return std::nullopt;
    Reader r(*outputs.begin());
    return r.u32();
  }
};

ElectionRun run_election(uint32_t n, uint32_t f, uint64_t seed, Attack attack, const ElectionConfig &cfg = config()) {
  World w(crypto::make_mock_suite(), n, f, seed);
  ElectionRun out;
  StarvePlan plan = starve_plan(n, f);
  if (attack == Attack::Forge) out.corrupt = {n};
  if (attack == Attack::Starve) out.corrupt = plan.corrupt;
  auto sched = attack == Attack::Starve ? sim::make_delay_targets(starve_sharing(plan), "starve") : sim::make_random();
  out.live = testing::run_live(
      w,
      [&](World &w, PartyId p) -> std::unique_ptr<sim::Node> {
        auto node = std::make_unique<ReactorNode<Election>>(std::make_unique<Election>(w.context(p), "el", cfg),
                                                            encode_election_output);
        if (!out.corrupt.contains(p)) {
          out.nodes.push_back(node.get());
          return node;
        }
        auto fn = attack == Attack::Forge ? election_forgery("el", p, n, f) : bottom_candidates(plan.victims);
        return std::make_unique<TamperNode>(std::move(node), fn, Rng(seed * 31 + p));
      },
      out.corrupt, std::move(sched), seed);
  out.quiescent = out.live.result.quiescent;
  out.outputs = testing::honest_outputs(out.live.result, out.corrupt, &out.honest_out);
  return out;
}

}  // namespace

TEST_CASE("index mapping is big-endian mod n plus one") {
  CHECK(index_of(Bytes{0x01, 0x00}, 4) == 1);  // 256 mod 4 = 0
  CHECK(index_of(Bytes{0x12, 0x34, 0x56, 0x78}, 7) == PartyId(0x12345678u % 7 + 1));
  CHECK(index_of(Bytes{0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff}, 13) == 1);  // 2^72-1 = 0 mod 13
  CHECK(index_of(Bytes{}, 5) == 1);
}

TEST_CASE("vote winner needs the largest pair at least f+1 times") {
  VrfTriple hi{2, Bytes{9}, Bytes{1}}, lo{3, Bytes{4}, Bytes{2}};
  std::vector<BallotEntry> g{{1, hi}, {2, hi}, {3, lo}};
  auto w = vote_winner(g, 1);
  REQUIRE(w);
  CHECK(w->dealer == 2);
  // Largest seen only once: no winner even though lo is a majority.
  std::vector<BallotEntry> g2{{1, hi}, {2, lo}, {3, lo}};
  CHECK(!vote_winner(g2, 1));
  // The pair is what matters: same (dealer, r) under a different proof still counts.
  VrfTriple hi2 = hi;
  hi2.proof = Bytes{7};
  std::vector<BallotEntry> g3{{1, hi}, {2, hi2}, {3, lo}};
  CHECK(vote_winner(g3, 1));
  CHECK(!vote_winner({}, 0));

  auto back = decode_vote(encode_vote(g), 4);
  CHECK(back == g);
  CHECK_THROWS_AS(decode_vote(encode_vote(g), 2), DecodeError);
}

TEST_CASE("election init and own input") {
  World w(crypto::make_mock_suite(), 4, 1, 0);
  Election e(w.context(3), "el", config());
  auto st = e.start();
  std::set<std::string> inst;
  for (const auto &m : st.out) inst.insert(m.instance);
  CHECK(inst == std::set<std::string>{"el/k/a3"});  // RBCs are idle until the coin gives rnd_max
  CHECK(!e.ballot());

  // Full run: each party's RBC carries its own coin maximum, and every party
  // sees the same value from it.
  auto r = run_election(4, 1, 7, Attack::None);
  for (auto *node : r.nodes) {
    const auto &g = node->reactor().g();
    CHECK(g.size() >= 3);
    for (auto *other : r.nodes)
      for (const auto &e1 : g)
        for (const auto &e2 : other->reactor().g())
          if (e1.from == e2.from) CHECK(e1 == e2);
  }
}

TEST_CASE("election agreement in honest runs") {
  int non_default = 0;
  for (uint64_t s = 0; s < 60; ++s) {
    auto r = run_election(4, 1, s, Attack::None);
    CHECK(r.quiescent);
    CHECK(r.honest_out == 4);
    REQUIRE(r.outputs.size() == 1);
    for (auto *node : r.nodes) non_default += node->reactor().ballot().value_or(false);
  }
  CHECK(non_default > 0);
}

TEST_CASE("election survives vote forgery") {
  for (uint64_t s = 0; s < 100; ++s) {
    auto r = run_election(4, 1, s, Attack::Forge);
    CHECK(r.quiescent);
    CHECK(r.honest_out == 3);
    CHECK(r.outputs.size() == 1);
  }
  for (uint64_t s = 0; s < 5; ++s) {
    auto r = run_election(7, 2, s, Attack::Forge);
    CHECK(r.honest_out == 6);
    CHECK(r.outputs.size() == 1);
  }
}

TEST_CASE("election under the starving adversary") {
  int ok = 0, trials = 100;
  for (uint64_t s = 0; s < uint64_t(trials); ++s) {
    auto r = run_election(4, 1, s, Attack::Starve);
    CHECK(r.quiescent);
    CHECK(r.honest_out == 3);
    REQUIRE(r.outputs.size() == 1);
    ok += r.nodes.front()->reactor().agreed() == true;
  }
  MESSAGE("non-default path under starvation " << ok << "/" << trials);
  CHECK(double(ok) / trials >= 1.0 / 3 - 0.05);
}

TEST_CASE("elected index looks uniform") {
  std::vector<uint64_t> hist(4, 0);
  for (uint64_t s = 0; s < 400; ++s) {
    auto r = run_election(4, 1, 10000 + s, Attack::None);
    auto idx = r.index();
    REQUIRE(idx);
    hist[*idx - 1]++;
  }
  auto chi = harness::chi_square_uniform(hist);
  INFO(hist[0] << " " << hist[1] << " " << hist[2] << " " << hist[3]);
  CHECK(chi.p_value > 0.001);
}
