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
#include "asyncbft/protocol/seeding.hpp"
#include "helpers.hpp"

using namespace asyncbft;
using namespace asyncbft::protocol;
using testing::honest_outputs;
using testing::run_world;

namespace {

std::unique_ptr<sim::Node> seeding_node(World &w, PartyId p, PartyId leader) {
  return make_node(std::make_unique<Seeding>(w.context(p), "seed", leader),
                   std::function<Bytes(const Bytes &)>([](const Bytes &b) { return b; }));
}

}  // namespace

TEST_CASE("seeding init deals one script to the leader") {
  World w(crypto::make_mock_suite(1000003), 4, 1, 2);
  Seeding s(w.context(3), "seed", 2);
  auto st = s.start();
  REQUIRE(st.out.size() == 1);
  CHECK(st.out[0].to == 2);
  CHECK(st.out[0].tag == sim::Tag::PvssScript);
  pvss::Params p{4, 1, "seed"};
  auto script = pvss::decode(*w.suite(), st.out[0].payload, 4);
  CHECK(pvss::vrfy_script(p, *w.ring().directory(), script));
  CHECK(pvss::weights(p, script) == std::vector<uint32_t>{0, 0, 1, 0});
}

TEST_CASE("seeding honest runs agree") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    bool real = seed % 5 == 0;
    uint32_t f = seed % 3 == 2 ? 2 : 1, n = 3 * f + 1;
    World w(real ? crypto::make_real_suite() : crypto::make_mock_suite(), n, f, seed);
    PartyId leader = 1 + seed % n;
    auto r = run_world(w, [&](World &w, PartyId p) { return seeding_node(w, p, leader); }, {}, sim::make_random(),
                       seed);
    std::size_t cnt = 0;
    auto outs = honest_outputs(r, {}, &cnt);
    CHECK(cnt == n);
    CHECK(outs.size() == 1);
  }
}

TEST_CASE("seeding with a silent leader produces nothing") {
  World w(crypto::make_mock_suite(), 4, 1, 1);
  auto r = run_world(
      w,
      [&](World &w, PartyId p) -> std::unique_ptr<sim::Node> {
        if (p == 1) return std::make_unique<SilentNode>();
        return seeding_node(w, p, 1);
      },
      {1}, sim::make_random(), 1);
  std::size_t cnt = 0;
  honest_outputs(r, {1}, &cnt);
  CHECK(cnt == 0);
  CHECK(r.quiescent);
}

TEST_CASE("seeding totality with a corrupt non-leader") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    World w(crypto::make_mock_suite(), 4, 1, seed);
    auto r = run_world(
        w,
        [&](World &w, PartyId p) -> std::unique_ptr<sim::Node> {
          if (p == 4) return std::make_unique<SilentNode>();
          return seeding_node(w, p, 1);
        },
        {4}, sim::make_random(), seed);
    std::size_t cnt = 0;
    auto outs = honest_outputs(r, {4}, &cnt);
    CHECK(cnt == 3);
    CHECK(outs.size() == 1);
  }
}

TEST_CASE("equivocating leader never splits honest seeds") {
  int outputs = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    uint32_t f = seed % 2 ? 2 : 1, n = 3 * f + 1;
    World w(crypto::make_mock_suite(), n, f, seed);
    auto r = run_world(
        w,
        [&](World &w, PartyId p) -> std::unique_ptr<sim::Node> {
          if (p == 1) return make_equivocating_leader(w, 1, "seed", seed);
          return seeding_node(w, p, 1);
        },
        {1}, sim::make_random(), seed);
    std::size_t cnt = 0;
    auto outs = honest_outputs(r, {1}, &cnt);
    CHECK(outs.size() <= 1);
    CHECK((cnt == 0 || cnt == n - 1));  // totality
    outputs += cnt > 0;
  }
  CHECK(outputs > 0);  // the attack is not trivially inert
}
