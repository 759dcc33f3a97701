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

#include <set>

#include "asyncbft/sim/network.hpp"

using namespace asyncbft;
using namespace asyncbft::sim;

namespace {

// Two-phase gather: multicast a value, then after n-f values multicast the
// collected set; output after n-f sets.
class GatherNode final : public Node {
 public:
  GatherNode(PartyId me, uint32_t n, uint32_t f) : me_{me}, n_{n}, f_{f} {}
  void start(Outbox &out) override { out.send_all(to_all(n_, "g", Tag::Val, Bytes{uint8_t(me_)})); }
  void receive(const Envelope &env, Outbox &out) override {
    if (env.tag == Tag::Val && vals_.insert(env.from).second && vals_.size() == n_ - f_) {
      Bytes set(vals_.begin(), vals_.end());
      out.send_all(to_all(n_, "g/s", Tag::Aux, set));
    } else if (env.tag == Tag::Aux && sets_.insert(env.from).second && sets_.size() == n_ - f_) {
      out_ = Bytes{1};
    }
  }
  std::optional<Bytes> output() const override { return out_; }

 private:
  PartyId me_;
  uint32_t n_, f_;
  std::set<PartyId> vals_, sets_;
  std::optional<Bytes> out_;
};

class SilentNode final : public Node {
 public:
  void start(Outbox &) override {}
  void receive(const Envelope &, Outbox &) override {}
  std::optional<Bytes> output() const override { return std::nullopt; }
};

RunResult gather(uint32_t n, uint32_t f, std::unique_ptr<Scheduler> s, uint64_t seed, std::set<PartyId> corrupt = {},
                 bool record = true) {
  std::vector<std::unique_ptr<Node>> nodes;
  for (PartyId p = 1; p <= n; ++p) {
    if (corrupt.contains(p))
      nodes.push_back(std::make_unique<SilentNode>());
    else
      nodes.push_back(std::make_unique<GatherNode>(p, n, f));
  }
  NetworkConfig cfg{n, f, corrupt};
  cfg.record = record;
  cfg.config_json = "{}";
  Network net(cfg, std::move(nodes), std::move(s), Rng(seed));
  return net.run();
}

}  // namespace

TEST_CASE("gather runs in two rounds under any schedule") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto r = gather(4, 1, make_random(), seed);
    CHECK(r.quiescent);
    CHECK(r.metrics.rounds == 2);
    for (const auto &o : r.outputs) CHECK(o.has_value());
  }
  auto r = gather(7, 2, make_fifo(), 0, {3, 5});
  CHECK(r.metrics.rounds == 2);
  CHECK(r.metrics.messages == 5 * 5 * 2);  // only honest-honest traffic counts
}

TEST_CASE("hand-computed round labels") {
  // start sends a (ev1) and b (ev2); ev1 sends c (ev3); ev3 sends d (ev4).
  CHECK(assign_rounds({0, 0, 1, 3}) == 3);
  // A late start message pulls every earlier event to distance 1, so the
  // three-hop chain collapses to two rounds.
  CHECK(assign_rounds({0, 1, 2, 0}) == 2);
  // Non-honest deliveries do not create edges.
  CHECK(assign_rounds({std::nullopt, 1}) == 0);
  CHECK(assign_rounds({}) == 0);
  CHECK_THROWS_AS(assign_rounds({1}), std::logic_error);
}

TEST_CASE("runs are deterministic given the seed") {
  auto a = gather(4, 1, make_random(), 42);
  auto b = gather(4, 1, make_random(), 42);
  auto c = gather(4, 1, make_random(), 43);
  REQUIRE(a.transcript);
  CHECK(diff_transcripts(*a.transcript, *b.transcript).empty());
  CHECK(encode_transcript(*a.transcript) == encode_transcript(*b.transcript));
  CHECK(!diff_transcripts(*a.transcript, *c.transcript).empty());
}

TEST_CASE("dropping honest traffic is rejected") {
  auto drop_first = make_scripted([](const PendingSet &, Rng &) { return Decision{Decision::Drop, 0}; }, "drop");
  CHECK_THROWS_AS(gather(4, 1, std::move(drop_first), 1), AdversaryViolation);

  // Dropping everything from the corrupted party is fine.
  auto drop_corrupt = make_scripted(
      [](const PendingSet &p, Rng &) {
        for (std::size_t i = 0; i < p.size(); ++i)
          if (!p.at(i).honest_pair) return Decision{Decision::Drop, i};
        return Decision{Decision::Deliver, p.oldest()};
      },
      "drop-corrupt");
  std::vector<std::unique_ptr<Node>> nodes;
  for (PartyId p = 1; p <= 4; ++p) nodes.push_back(std::make_unique<GatherNode>(p, 4, 1));
  Network net({4, 1, {2}}, std::move(nodes), std::move(drop_corrupt), Rng(1));
  auto r = net.run();
  CHECK(r.metrics.dropped == 10);  // 4 values from party 2, 3 values and 3 sets to it
  CHECK(r.outputs[0].has_value());
}

TEST_CASE("honest payloads are hidden from the scheduler") {
  bool saw_payload = false;
  auto spy = make_scripted(
      [&](const PendingSet &p, Rng &) {
        for (std::size_t i = 0; i < p.size(); ++i) {
          auto v = p.at(i);
          if (v.honest_pair && v.payload) saw_payload = true;
        }
        return Decision{Decision::Deliver, 0};
      },
      "spy");
  gather(4, 1, std::move(spy), 0, {4});
  CHECK(!saw_payload);
}

TEST_CASE("fairness cap forces delivery of starved envelopes") {
  // Targets party 1 forever; since the gather is finite the run still ends,
  // but party 1's envelopes go last.
  auto r = gather(4, 1, make_delay_targets(touches_party(1), "starve-1"), 3);
  CHECK(r.quiescent);
  for (const auto &o : r.outputs) CHECK(o.has_value());

  // Always picking the newest envelope would starve the first one forever on
  // an endless workload; the cap bounds its wait.
  class Chatter final : public Node {
   public:
    void start(Outbox &out) override {
      out.send({2, "c", Tag::Val, {}});
      out.send({1, "c", Tag::Val, {}});
    }
    void receive(const Envelope &, Outbox &out) override {
      if (++steps_ < 5000) out.send({1, "c", Tag::Val, {}});
    }
    std::optional<Bytes> output() const override { return std::nullopt; }
    uint64_t steps_ = 0;
  };
  std::vector<std::unique_ptr<Node>> nodes;
  nodes.push_back(std::make_unique<Chatter>());
  for (int i = 1; i < 4; ++i) nodes.push_back(std::make_unique<SilentNode>());
  auto newest = make_scripted(
      [](const PendingSet &p, Rng &) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.size(); ++i)
          if (p.at(i).seq > p.at(best).seq) best = i;
        return Decision{Decision::Deliver, best};
      },
      "newest");
  NetworkConfig cfg{4, 1, {}};
  cfg.fairness_cap = 1000;
  cfg.record = true;
  Network net(cfg, std::move(nodes), std::move(newest), Rng(0));
  auto res = net.run();
  uint64_t victim_step = 0;
  for (const auto &e : res.transcript->events)
    if (e.env.seq == 1) victim_step = e.step;
  CHECK(victim_step == 1001);
}

TEST_CASE("step cap yields a liveness report") {
  std::vector<std::unique_ptr<Node>> nodes;
  for (PartyId p = 1; p <= 4; ++p) nodes.push_back(std::make_unique<GatherNode>(p, 4, 1));
  NetworkConfig cfg{4, 1, {}};
  cfg.step_cap = 5;
  Network net(cfg, std::move(nodes), make_fifo(), Rng(0));
  auto r = net.run();
  CHECK(!r.quiescent);
  CHECK(r.liveness_report.find("g(") != std::string::npos);
}

TEST_CASE("per-instance metrics sum to the total") {
  auto r = gather(7, 2, make_random(), 9);
  auto all = r.metrics.subtree("g");
  CHECK(all.messages == r.metrics.messages);
  CHECK(all.bits == r.metrics.bits);
  CHECK(r.metrics.subtree("g/s").messages == 49);
  CHECK(r.metrics.subtree("g/").messages == 0);  // not an instance id
  CHECK(within("g/s", "g"));
  CHECK(!within("gs", "g"));
}

TEST_CASE("transcript codec") {
  auto r = gather(4, 1, make_random(), 5, {2});
  REQUIRE(r.transcript);
  auto bytes = encode_transcript(*r.transcript);
  auto back = decode_transcript(bytes);
  CHECK(diff_transcripts(*r.transcript, back).empty());
  CHECK(assign_rounds(back, {2}) == r.metrics.rounds);
  CHECK(render_text(back).find("deliver") != std::string::npos);

  // Any single flipped payload byte shows up in the diff.
  auto tampered = back;
  for (auto &e : tampered.events) {
    if (!e.env.payload.empty()) {
      e.env.payload[0] ^= 1;
      break;
    }
  }
  CHECK(!diff_transcripts(back, tampered).empty());

  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_transcript(bad), DecodeError);
  auto trunc = Bytes(bytes.begin(), bytes.begin() + bytes.size() / 2);
  try {
    decode_transcript(trunc);
    FAIL("expected decode error");
  } catch (const DecodeError &e) {
    CHECK(e.offset() <= trunc.size());
  }
}
