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

#include <fmt/format.h>

#include <json.hpp>
#include <numeric>

#include "asyncbft/harness/experiment.hpp"
#include "asyncbft/protocol/adversary.hpp"
#include "asyncbft/protocol/election.hpp"
#include "asyncbft/protocol/seeding.hpp"

namespace asyncbft::harness {

using namespace protocol;

namespace {

// Core-set check: whenever an honest party accepts a Commit, the committed
// set must already be inside the local S of at least f+1 honest parties.
class CoreSetChecker final : public Probe {
 public:
  CoreSetChecker(uint32_t f, std::set<PartyId> corrupt) : f_{f}, corrupt_{std::move(corrupt)} {}

  void coin_set(PartyId p, const std::string &inst, const std::set<PartyId> &s) override { s_[{inst, p}] = s; }
  void coin_lock_signed(PartyId, const std::string &inst, const Bytes &h, const std::vector<PartyId> &set) override {
    signed_[{inst, h}] = set;
  }
  void coin_commit_accepted(PartyId, const std::string &inst, const Bytes &h) override {
    auto it = signed_.find({inst, h});
    if (it == signed_.end()) {
      violation(fmt::format("core set: {} committed a set no honest party signed", inst));
      return;
    }
    uint32_t holders = 0;
    for (const auto &[key, local] : s_) {
      if (key.first != inst || corrupt_.contains(key.second)) continue;
      holders += std::all_of(it->second.begin(), it->second.end(), [&](PartyId k) { return local.contains(k); });
    }
    if (holders < f_ + 1) violation(fmt::format("core set: {} committed set held by only {} honest parties", inst, holders));
  }
  void coin_output(PartyId, const std::string &, std::size_t c, std::size_t) override {
    min_c_ = std::min<std::size_t>(min_c_, c);
  }

  std::vector<std::string> violations;
  std::size_t min_c() const { return min_c_; }

 private:
  void violation(std::string v) {
    if (violations.size() < 4) violations.push_back(std::move(v));
  }
  uint32_t f_;
  std::set<PartyId> corrupt_;
  std::map<std::pair<std::string, PartyId>, std::set<PartyId>> s_;
  std::map<std::pair<std::string, Bytes>, std::vector<PartyId>> signed_;
  std::size_t min_c_ = SIZE_MAX;
};

struct Trial {
  const ExperimentConfig &c;
  uint32_t n, f, index;
  uint64_t seed;
  World world;
  std::set<PartyId> corrupt;
  std::unique_ptr<sim::Scheduler> sched;
  std::unique_ptr<sim::Network> net;
  sim::RunResult run;
  TrialResult out;

  Trial(const ExperimentConfig &cfg, uint32_t nn, uint32_t t)
      : c{cfg},
        n{nn},
        f{cfg.f_for(nn)},
        index{t},
        seed{trial_seed(cfg, nn, t)},
        world{cfg.crypto == "real" ? crypto::make_real_suite() : crypto::make_mock_suite(), nn, cfg.f_for(nn), seed},
        sched{cfg.scheduler == "fifo" ? sim::make_fifo() : sim::make_random()} {
    out.n = n;
    out.f = f;
    out.trial = t;
    out.seed = seed;
  }

  std::set<PartyId> last_f() const {
    std::set<PartyId> s;
    for (PartyId p = n - f + 1; p <= n; ++p) s.insert(p);
    return s;
  }
  uint32_t honest() const { return n - uint32_t(corrupt.size()); }
  bool is_corrupt(PartyId p) const { return corrupt.contains(p); }
  Rng rng(std::string_view label) const { return Rng(seed).fork(label); }

  void execute(std::vector<std::unique_ptr<sim::Node>> nodes, bool record, sim::Transcript *transcript) {
    sim::NetworkConfig nc;
    nc.n = n;
    nc.f = f;
    nc.corrupt = corrupt;
    nc.step_cap = c.step_cap;
    nc.record = record || transcript;
    nlohmann::json hdr{{"experiment", nlohmann::json::parse(config_to_json(c))}, {"n", n}, {"trial", index}};
    nc.config_json = hdr.dump();
    net = std::make_unique<sim::Network>(nc, std::move(nodes), std::move(sched), Rng(seed).fork("network"));
    run = net->run();
    out.messages = run.metrics.messages;
    out.bits = run.metrics.bits;
    out.rounds = run.metrics.rounds;
    if (!run.quiescent) violation("termination: " + run.liveness_report);
    if (transcript && run.transcript) *transcript = *run.transcript;
  }

  // Honest outputs; sets terminated/agreed.
  std::set<Bytes> outputs(std::size_t *count = nullptr) {
    std::set<Bytes> outs;
    std::size_t k = 0;
    for (PartyId p = 1; p <= n; ++p) {
      if (is_corrupt(p) || !run.outputs[p - 1]) continue;
      outs.insert(*run.outputs[p - 1]);
      ++k;
    }
    out.terminated = k == honest();
    out.agreed = outs.size() == 1 && out.terminated;
    if (count) *count = k;
    return outs;
  }

  void violation(std::string v) {
    if (out.violations.size() < 4) out.violations.push_back(std::move(v));
  }

  template <class R>
  R &reactor(PartyId p) {
    return static_cast<ReactorNode<R> &>(net->node(p)).reactor();
  }

  template <class R>
  std::unique_ptr<sim::Node> wrap(std::unique_ptr<R> r, std::function<Bytes(const typename R::Output &)> enc) {
    return std::make_unique<ReactorNode<R>>(std::move(r), std::move(enc));
  }
};

// Rounds of one phase alone: only that phase's honest deliveries are kept, and
// a send triggered outside the phase counts as sent at the start.
uint32_t phase_rounds(const sim::Transcript &t, const std::set<PartyId> &corrupt,
                      const std::function<bool(std::string_view)> &in_phase) {
  std::map<uint64_t, uint64_t> renum;
  std::vector<std::optional<uint64_t>> sent;
  for (const auto &e : t.events) {
    if (e.kind != sim::Event::Deliver || !in_phase(e.env.instance)) continue;
    bool hh = !corrupt.contains(e.env.from) && !corrupt.contains(e.env.to);
    auto it = renum.find(e.env.sent_event);
    sent.push_back(hh ? std::optional<uint64_t>(it == renum.end() ? 0 : it->second) : std::nullopt);
    renum[e.step] = sent.size();
  }
  return sim::assign_rounds(sent);
}

Bytes ident(const Bytes &b) { return b; }

CoinConfig coin_config(const ExperimentConfig &c, uint64_t seed) {
  CoinConfig cc;
  cc.mode = c.coin_mode == "seeding" ? CoinMode::Seeding : CoinMode::Genesis;
  if (cc.mode == CoinMode::Genesis) cc.genesis_nonce = to_bytes(fmt::format("genesis-{}", seed));
  return cc;
}

void run_avss(Trial &t, sim::Transcript *tr) {
  PartyId dealer = 1 + t.index % t.n;
  std::optional<AvssAttack> attack;
  for (auto a : all_avss_attacks())
    if (attack_name(a) == t.c.adversary) attack = a;
  if (attack) t.corrupt = {dealer};
  Bytes secret(16);
  t.rng("secret").fill(secret);
  std::vector<std::unique_ptr<sim::Node>> nodes;
  for (PartyId p = 1; p <= t.n; ++p) {
    auto node = t.wrap(std::make_unique<AvssPipeline>(t.world.context(p), "avss", dealer,
                                                      p == dealer ? std::optional<Bytes>(secret) : std::nullopt),
                       std::function<Bytes(const AvssPipeline::Output &)>(encode_pipeline_output));
    if (attack && p == dealer)
      nodes.push_back(std::make_unique<TamperNode>(std::move(node), avss_dealer_tamper(*attack, t.world, dealer, "avss"),
                                                   t.rng("tamper")));
    else
      nodes.push_back(std::move(node));
  }
  t.execute(std::move(nodes), !attack, tr);
  std::size_t rec = 0;
  auto outs = t.outputs(&rec);
  std::size_t sh = 0, holders = 0;
  std::set<std::pair<Bytes, Bytes>> hc;
  for (PartyId p = 1; p <= t.n; ++p) {
    if (t.is_corrupt(p)) continue;
    const auto &o = t.reactor<AvssPipeline>(p).sh_output();
    if (!o) continue;
    ++sh;
    hc.insert({o->h, o->c});
    holders += o->cmt.has_value();
  }
  auto H = t.honest();
  if (sh != 0 && sh != H) t.violation(fmt::format("totality: {} of {} honest parties completed the sharing", sh, H));
  if (hc.size() > 1) t.violation("commitment: honest parties hold different (h, c)");
  if (sh > 0 && holders < t.n - 2 * t.f) t.violation(fmt::format("commitment: only {} share holders", holders));
  if (outs.size() > 1) t.violation("commitment: honest parties reconstructed different secrets");
  if (sh == H && rec != H) t.violation(fmt::format("totality: {} of {} reconstructed", rec, H));
  if (!attack) {
    if (sh != H) t.violation("correctness: honest dealer's sharing did not complete");
    if (outs != std::set<Bytes>{secret}) t.violation("correctness: reconstructed secret differs from the dealer's");
    if (t.run.transcript) {
      t.out.sh_rounds = phase_rounds(*t.run.transcript, t.corrupt, [](std::string_view i) { return i == "avss"; });
      t.out.rec_rounds =
          phase_rounds(*t.run.transcript, t.corrupt, [](std::string_view i) { return sim::within(i, "avss/r"); });
    }
  }
}

void run_rbc(Trial &t, sim::Transcript *tr) {
  PartyId sender = 1 + t.index % t.n;
  if (t.c.adversary == "equivocate") t.corrupt = {sender};
  if (t.c.adversary == "silent") {
    t.corrupt = t.last_f();
    sender = 1 + t.index % (t.n - t.f);
  }
  Bytes v(32), other(32);
  t.rng("value").fill(v);
  t.rng("other").fill(other);
  std::vector<std::unique_ptr<sim::Node>> nodes;
  for (PartyId p = 1; p <= t.n; ++p) {
    if (t.c.adversary == "silent" && t.is_corrupt(p)) {
      nodes.push_back(std::make_unique<SilentNode>());
      continue;
    }
    auto node = t.wrap(std::make_unique<Rbc>(t.world.context(p), "rbc", sender,
                                             p == sender ? std::optional<Bytes>(v) : std::nullopt),
                       std::function<Bytes(const Bytes &)>(ident));
    if (t.is_corrupt(p))
      nodes.push_back(std::make_unique<TamperNode>(std::move(node), rbc_equivocate(other), t.rng("tamper")));
    else
      nodes.push_back(std::move(node));
  }
  t.execute(std::move(nodes), false, tr);
  std::size_t k = 0;
  auto outs = t.outputs(&k);
  if (outs.size() > 1) t.violation("agreement: honest parties delivered different values");
  if (k != 0 && k != t.honest()) t.violation(fmt::format("totality: {} of {} delivered", k, t.honest()));
  if (!t.is_corrupt(sender) && outs != std::set<Bytes>{v}) t.violation("validity: honest sender's value not delivered");
}

void run_seeding(Trial &t, sim::Transcript *tr) {
  PartyId leader = 1 + t.index % t.n;
  const auto &adv = t.c.adversary;
  if (adv == "equivocate" || adv == "silent-leader") t.corrupt = {leader};
  if (adv == "silent") {
    t.corrupt = t.last_f();
    leader = 1 + t.index % (t.n - t.f);
  }
  std::vector<std::unique_ptr<sim::Node>> nodes;
  for (PartyId p = 1; p <= t.n; ++p) {
    if (t.is_corrupt(p) && adv == "equivocate")
      nodes.push_back(make_equivocating_leader(t.world, leader, "seed", t.seed));
    else if (t.is_corrupt(p))
      nodes.push_back(std::make_unique<SilentNode>());
    else
      nodes.push_back(t.wrap(std::make_unique<Seeding>(t.world.context(p), "seed", leader),
                             std::function<Bytes(const Bytes &)>(ident)));
  }
  t.execute(std::move(nodes), false, tr);
  std::size_t k = 0;
  auto outs = t.outputs(&k);
  if (outs.size() > 1) t.violation("commitment: honest parties output different seeds");
  if (k != 0 && k != t.honest()) t.violation(fmt::format("totality: {} of {} output", k, t.honest()));
  if (!t.is_corrupt(leader) && k != t.honest()) t.violation("correctness: honest leader, not every party output");
}

// Corrupt-party setup shared by coin, aba and election.
struct Attack {
  StarvePlan plan;
  bool starve = false, silent = false;
};

Attack setup_attack(Trial &t) {
  Attack a;
  if (t.c.adversary == "none") return a;
  if (t.c.adversary == "starve") {
    a.starve = true;
    a.plan = starve_plan(t.n, t.f);
    t.corrupt = a.plan.corrupt;
    t.sched = sim::make_delay_targets(starve_sharing(a.plan), "starve");
  } else {
    t.corrupt = t.last_f();
    a.silent = t.c.adversary == "silent";
  }
  return a;
}

void run_coin(Trial &t, sim::Transcript *tr) {
  auto a = setup_attack(t);
  CoreSetChecker probe(t.f, t.corrupt);
  auto cfg = coin_config(t.c, t.seed);
  std::vector<std::unique_ptr<sim::Node>> nodes;
  for (PartyId p = 1; p <= t.n; ++p) {
    if (t.is_corrupt(p) && a.silent) {
      nodes.push_back(std::make_unique<SilentNode>());
      continue;
    }
    auto node = t.wrap(std::make_unique<Coin>(t.world.context(p, t.is_corrupt(p) ? nullptr : &probe), "coin", cfg),
                       std::function<Bytes(const CoinOutput &)>(encode_coin_output));
    if (t.is_corrupt(p))
      nodes.push_back(std::make_unique<TamperNode>(std::move(node), bottom_candidates(a.plan.victims), t.rng("tamper")));
    else
      nodes.push_back(std::move(node));
  }
  t.execute(std::move(nodes), false, tr);
  std::size_t k = 0;
  t.outputs(&k);
  std::set<uint8_t> bits;
  for (PartyId p = 1; p <= t.n; ++p)
    if (!t.is_corrupt(p) && t.run.outputs[p - 1]) bits.insert(t.run.outputs[p - 1]->at(0));
  t.out.agreed = t.out.terminated && bits.size() == 1;
  if (t.out.agreed) t.out.bit = *bits.begin() != 0;
  if (!t.out.terminated) t.violation(fmt::format("termination: {} of {} honest parties output", k, t.honest()));
  for (auto &v : probe.violations) t.violation(v);
  t.out.min_candidates = probe.min_c() == SIZE_MAX ? 0 : uint32_t(probe.min_c());
  if (k > 0 && probe.min_c() < t.n - 2 * t.f)
    t.violation(fmt::format("candidates: output with |C| = {} < n - 2f", probe.min_c()));
}

AbaCoin aba_coin(const ExperimentConfig &c, uint64_t seed) {
  AbaCoin ac;
  if (c.aba_coin == "perfect") {
    ac.kind = AbaCoin::Perfect;
    ac.perfect_seed = to_bytes(fmt::format("perfect-{}", seed));
  } else {
    ac.coin = coin_config(c, seed);
  }
  return ac;
}

void run_aba(Trial &t, sim::Transcript *tr) {
  auto a = setup_attack(t);
  auto coin = aba_coin(t.c, t.seed);
  auto in_rng = t.rng("inputs");
  std::vector<bool> inputs(t.n + 1);
  for (PartyId p = 1; p <= t.n; ++p) {
    const auto &m = t.c.inputs;
    inputs[p] = m == "one" || (m == "split" && p % 2 == 1) || (m == "mixed" && in_rng.uniform(2) == 1);
  }
  std::vector<std::unique_ptr<sim::Node>> nodes;
  for (PartyId p = 1; p <= t.n; ++p) {
    if (t.is_corrupt(p) && a.silent) {
      nodes.push_back(std::make_unique<SilentNode>());
      continue;
    }
    auto node = t.wrap(std::make_unique<Aba>(t.world.context(p), "aba", coin, bool(inputs[p])),
                       std::function<Bytes(const AbaOutput &)>(encode_aba_output));
    if (t.is_corrupt(p))
      nodes.push_back(std::make_unique<TamperNode>(
          std::move(node), a.starve ? bottom_candidates(a.plan.victims) : aba_contradict(), t.rng("tamper")));
    else
      nodes.push_back(std::move(node));
  }
  t.execute(std::move(nodes), false, tr);
  std::size_t k = 0;
  auto outs = t.outputs(&k);
  if (!t.out.terminated) t.violation(fmt::format("termination: {} of {} decided", k, t.honest()));
  if (outs.size() > 1) t.violation("agreement: honest parties decided differently");
  std::set<bool> honest_in;
  for (PartyId p = 1; p <= t.n; ++p)
    if (!t.is_corrupt(p)) honest_in.insert(inputs[p]);
  if (honest_in.size() == 1 && !outs.empty() && outs != std::set<Bytes>{Bytes{uint8_t(*honest_in.begin())}})
    t.violation("validity: unanimous honest input not decided");
  double sum = 0;
  int cnt = 0;
  for (PartyId p = 1; p <= t.n; ++p) {
    if (t.is_corrupt(p)) continue;
    const auto &d = t.reactor<Aba>(p).decided();
    if (!d) continue;
    sum += d->rounds;
    ++cnt;
  }
  if (cnt) t.out.aba_rounds = sum / cnt;
}

void run_election(Trial &t, sim::Transcript *tr) {
  auto a = setup_attack(t);
  ElectionConfig cfg;
  cfg.coin = coin_config(t.c, t.seed);
  if (t.c.aba_coin == "perfect") cfg.aba = aba_coin(t.c, t.seed);
  std::vector<std::unique_ptr<sim::Node>> nodes;
  for (PartyId p = 1; p <= t.n; ++p) {
    if (t.is_corrupt(p) && a.silent) {
      nodes.push_back(std::make_unique<SilentNode>());
      continue;
    }
    auto node = t.wrap(std::make_unique<Election>(t.world.context(p), "el", cfg),
                       std::function<Bytes(const ElectionOutput &)>(encode_election_output));
    if (t.is_corrupt(p))
      nodes.push_back(std::make_unique<TamperNode>(
          std::move(node), a.starve ? bottom_candidates(a.plan.victims) : election_forgery("el", p, t.n, t.f),
          t.rng("tamper")));
    else
      nodes.push_back(std::move(node));
  }
  t.execute(std::move(nodes), false, tr);
  std::size_t k = 0;
  auto outs = t.outputs(&k);
  if (!t.out.terminated) t.violation(fmt::format("termination: {} of {} output", k, t.honest()));
  if (outs.size() > 1) t.violation("agreement: honest parties elected different indices");
  if (t.out.agreed) {
    Reader r(*outs.begin());
    t.out.index = r.u32();
    if (*t.out.index < 1 || *t.out.index > t.n) t.violation("range: elected index outside [1, n]");
  }
  for (PartyId p = 1; p <= t.n; ++p) {
    if (t.is_corrupt(p)) continue;
    t.out.non_default = t.reactor<Election>(p).agreed() == true;
    break;
  }
}

}  // namespace

uint64_t trial_seed(const ExperimentConfig &c, uint32_t n, uint32_t trial) {
  return Rng(c.seed).fork(fmt::format("{}/n{}/t{}", protocol_name(c.protocol), n, trial)).next_u64();
}

TrialResult run_trial(const ExperimentConfig &c, uint32_t n, uint32_t trial, sim::Transcript *transcript) {
  Trial t(c, n, trial);
  switch (c.protocol) {
    case Protocol::Avss: run_avss(t, transcript); break;
    case Protocol::Rbc: run_rbc(t, transcript); break;
    case Protocol::Seeding: run_seeding(t, transcript); break;
    case Protocol::Coin: run_coin(t, transcript); break;
    case Protocol::Aba: run_aba(t, transcript); break;
    case Protocol::Election: run_election(t, transcript); break;
  }
  return std::move(t.out);
}

}  // namespace asyncbft::harness
