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

#include "asyncbft/protocol/adversary.hpp"

#include <algorithm>

#include "asyncbft/protocol/avss.hpp"
#include "asyncbft/protocol/coin.hpp"
#include "asyncbft/protocol/election.hpp"
#include "asyncbft/protocol/seeding.hpp"
#include "asyncbft/pvss.hpp"

namespace asyncbft::protocol {

const std::vector<AvssAttack> &all_avss_attacks() {
  static const std::vector<AvssAttack> all{AvssAttack::CrashAfterKeyShare, AvssAttack::ShortQuorum,
                                           AvssAttack::EquivocateCipher,   AvssAttack::SplitCommitment,
                                           AvssAttack::BadShares,          AvssAttack::PartialCipher};
  return all;
}

std::string_view attack_name(AvssAttack a) {
  switch (a) {
    case AvssAttack::CrashAfterKeyShare: return "crash-after-keyshare";
    case AvssAttack::ShortQuorum: return "short-quorum";
    case AvssAttack::EquivocateCipher: return "equivocate-cipher";
    case AvssAttack::SplitCommitment: return "split-commitment";
    case AvssAttack::BadShares: return "bad-shares";
    case AvssAttack::PartialCipher: return "partial-cipher";
  }
  return "?";
}

namespace {

std::vector<Message> one(Message m) { return {std::move(m)}; }

// Re-encode a Cipher payload with a modified signature set or ciphertext.
Bytes rewrite_cipher(ByteSpan payload, uint32_t n, bool drop_sig, bool flip_c) {
  Reader r(payload);
  auto pi = read_sigset(r, n);
  auto h = r.bytes();
  auto c = r.bytes();
  if (drop_sig && !pi.empty()) pi.pop_back();
  if (flip_c && !c.empty()) c[0] ^= 0x80;
  Writer w;
  write_sigset(w, pi);
  w.bytes(h).bytes(c);
  return std::move(w).take();
}

}  // namespace

TamperFn avss_dealer_tamper(AvssAttack a, const World &w, PartyId dealer, const std::string &instance) {
  const auto n = w.n(), f = w.f();
  auto suite = w.suite();
  switch (a) {
    case AvssAttack::CrashAfterKeyShare:
      return [](Message m, Rng &) { return m.tag == Tag::KeyShare ? one(std::move(m)) : std::vector<Message>{}; };
    case AvssAttack::ShortQuorum:
      return [n](Message m, Rng &) {
        if (m.tag == Tag::Cipher) m.payload = rewrite_cipher(m.payload, n, true, false);
        return one(std::move(m));
      };
    case AvssAttack::EquivocateCipher: {
      // Each recipient lands on one side of the split by a coin flip, so
      // some runs give one side a quorum and others starve both.
      auto side = std::make_shared<std::map<PartyId, bool>>();
      return [n, suite, side](Message m, Rng &rng) {
        if (m.tag == Tag::Cipher) {
          if (!side->contains(m.to)) (*side)[m.to] = rng.uniform(2) == 1;
          if ((*side)[m.to]) m.payload = rewrite_cipher(m.payload, n, false, true);
        }
        if (m.tag == Tag::Key) {
          Reader r(m.payload);
          auto k = suite->read_scalar(r);
          m.payload = suite->encode(suite->add(k, suite->scalar(1)));
        }
        return one(std::move(m));
      };
    }
    case AvssAttack::SplitCommitment: {
      // A second sharing, drawn lazily from the tamper rng.
      auto alt = std::make_shared<std::optional<std::pair<crypto::Commitment, crypto::Sharing>>>();
      return [suite, f, n, alt](Message m, Rng &rng) {
        if (m.tag != Tag::KeyShare || m.to % 2 == 1) return one(std::move(m));
        if (!*alt) {
          auto sh = crypto::shamir_share(*suite, suite->random_scalar(rng), f, n, rng);
          auto C = crypto::pedersen_commit(*suite, sh.A, sh.B);
          *alt = std::make_pair(std::move(C), std::move(sh));
        }
        const auto &[C, sh] = **alt;
        Writer w;
        w.raw(crypto::encode_commitment(*suite, C));
        suite->write(w, sh.shares[m.to - 1].a);
        suite->write(w, sh.shares[m.to - 1].b);
        m.payload = std::move(w).take();
        return one(std::move(m));
      };
    }
    case AvssAttack::BadShares: {
      PartyId victim = dealer % n + 1;
      return [suite, victim, n](Message m, Rng &) {
        if (m.tag == Tag::KeyShare && m.to == victim) {
          Reader r(m.payload);
          auto C = crypto::read_commitment(*suite, r, n);
          auto av = suite->read_scalar(r);
          auto bv = suite->read_scalar(r);
          Writer w;
          w.raw(crypto::encode_commitment(*suite, C));
          suite->write(w, suite->add(av, suite->scalar(1)));
          suite->write(w, bv);
          m.payload = std::move(w).take();
        }
        return one(std::move(m));
      };
    }
    case AvssAttack::PartialCipher: {
      auto chosen = std::make_shared<std::set<PartyId>>();
      return [f, n, chosen](Message m, Rng &rng) {
        if (m.tag != Tag::Cipher) return one(std::move(m));
        if (chosen->empty()) {
          std::vector<PartyId> all;
          for (PartyId j = 1; j <= n; ++j) all.push_back(j);
          std::shuffle(all.begin(), all.end(), rng);
          chosen->insert(all.begin(), all.begin() + f + 1);
        }
        return chosen->contains(m.to) ? one(std::move(m)) : std::vector<Message>{};
      };
    }
  }
  (void)instance;
  throw ParameterError("unknown avss attack");
}

TamperFn rbc_equivocate(Bytes other) {
  return [other = std::move(other)](Message m, Rng &) {
    if (m.tag == Tag::RbcSend && m.to % 2 == 0) m.payload = other;
    return one(std::move(m));
  };
}

// ---- seeding ---------------------------------------------------------------------

namespace {

class EquivocatingLeader final : public sim::Node {
 public:
  EquivocatingLeader(Context ctx, std::string instance, Rng rng)
      : ctx_{std::move(ctx)}, id_{std::move(instance)}, params_{ctx_.n, ctx_.f, id_}, rng_{std::move(rng)} {}

  void start(sim::Outbox &out) override {
    auto r = ctx_.rng_for(id_ + "#deal");
    auto own = pvss::deal(params_, *ctx_.dir, ctx_.me, *ctx_.keys, r);
    scripts_.emplace(ctx_.me, std::move(own));
    (void)out;
  }

  void receive(const Envelope &env, sim::Outbox &out) override {
    if (env.instance != id_) return;
    try {
      if (env.tag == Tag::PvssScript) on_script(env, out);
      if (env.tag == Tag::ConfirmAggPvss) on_confirm(env, out);
      if (env.tag == Tag::SeedShare) on_share(env, out);
    } catch (const DecodeError &) {
    } catch (const ParameterError &) {
    }
  }

  std::optional<Bytes> output() const override { return std::nullopt; }

 private:
  struct Branch {
    pvss::Script agg;
    Bytes h;
    std::set<PartyId> group;
    SigSet sigma;
    std::vector<pvss::Share> shares;
    bool committed = false, seeded = false;
  };

  void on_script(const Envelope &env, sim::Outbox &out) {
    if (locked_ || scripts_.contains(env.from)) return;
    auto s = pvss::decode(ctx_.S(), env.payload, ctx_.n);
    if (!pvss::vrfy_script(params_, *ctx_.dir, s)) return;
    scripts_.emplace(env.from, std::move(s));
    if (scripts_.size() < params_.t() + 1) return;
    locked_ = true;
    // Two aggregates over different t-subsets of the t+1 scripts we hold.
    std::vector<PartyId> ids;
    for (auto &[j, _] : scripts_) ids.push_back(j);
    std::shuffle(ids.begin(), ids.end(), rng_);
    std::vector<PartyId> parties;
    for (PartyId j = 1; j <= ctx_.n; ++j)
      if (j != ctx_.me) parties.push_back(j);
    std::shuffle(parties.begin(), parties.end(), rng_);
    auto half = parties.size() / 2 + rng_.uniform(2);
    for (int b = 0; b < 2; ++b) {
      std::vector<pvss::Script> pick;
      for (std::size_t k = 0; k < params_.t(); ++k) pick.push_back(scripts_.at(ids[b == 0 ? k : k + 1]));
      Branch br;
      br.agg = pvss::aggregate(ctx_.S(), pick);
      br.h = pvss::script_hash(ctx_.S(), br.agg);
      for (std::size_t k = 0; k < parties.size(); ++k)
        if ((k < half) == (b == 0)) br.group.insert(parties[k]);
      br.sigma.push_back({ctx_.me, ctx_.sign(id_, br.h)});
      auto enc = pvss::encode(ctx_.S(), br.agg);
      for (auto j : br.group) out.send({j, id_, Tag::LockAggPvss, enc});
      branches_.push_back(std::move(br));
    }
  }

  void on_confirm(const Envelope &env, sim::Outbox &out) {
    for (auto &br : branches_) {
      if (br.committed || !ctx_.verify(env.from, id_, br.h, env.payload)) continue;
      br.sigma.push_back({env.from, env.payload});
      if (br.sigma.size() == params_.t()) {
        br.committed = true;
        Writer w;
        w.bytes(br.h);
        write_sigset(w, br.sigma);
        for (PartyId j = 1; j <= ctx_.n; ++j) out.send({j, id_, Tag::CommitAggPvss, w.data()});
        // Reveal our own share too.
        br.shares.push_back(pvss::get_share(params_, ctx_.S(), ctx_.me, *ctx_.keys, br.agg));
      }
    }
  }

  void on_share(const Envelope &env, sim::Outbox &out) {
    Reader r(env.payload);
    auto share = pvss::read_share(ctx_.S(), r);
    for (auto &br : branches_) {
      if (!br.committed || br.seeded || share.index != env.from) continue;
      if (!pvss::vrfy_share(params_, *ctx_.dir, env.from, share, br.agg)) continue;
      br.shares.push_back(share);
      if (br.shares.size() == params_.t()) {
        br.seeded = true;
        auto secret = pvss::agg_shares(params_, *ctx_.dir, br.agg, br.shares);
        Writer w;
        w.bytes(br.h);
        write_sigset(w, br.sigma);
        ctx_.S().write(w, secret);
        w.u32(uint32_t(br.shares.size()));
        for (const auto &sh : br.shares) pvss::write_share(ctx_.S(), w, sh);
        for (PartyId j = 1; j <= ctx_.n; ++j) out.send({j, id_, Tag::Seed, w.data()});
        // Help the branch over the amplification thresholds.
        auto seed = seed_from_secret(ctx_.S(), secret);
        for (PartyId j = 1; j <= ctx_.n; ++j) {
          out.send({j, id_, Tag::SeedEcho, seed});
          out.send({j, id_, Tag::SeedReady, seed});
        }
      }
    }
  }

  Context ctx_;
  std::string id_;
  pvss::Params params_;
  Rng rng_;
  std::map<PartyId, pvss::Script> scripts_;
  bool locked_ = false;
  std::vector<Branch> branches_;
};

}  // namespace

std::unique_ptr<sim::Node> make_equivocating_leader(const World &w, PartyId leader, const std::string &instance,
                                                    uint64_t seed) {
  return std::make_unique<EquivocatingLeader>(w.context(leader), instance, Rng(seed).fork("equivocating-leader"));
}

// ---- aba -------------------------------------------------------------------------

TamperFn aba_contradict() {
  return [](Message m, Rng &rng) {
    std::vector<Message> out;
    if (m.tag == Tag::Val && m.payload.size() == 5) {
      // Val(r, b): send both bits.
      out.push_back(m);
      m.payload[4] ^= 1;
      out.push_back(std::move(m));
      return out;
    }
    if (m.tag == Tag::Conf && m.payload.size() == 5) m.payload[4] = uint8_t(rng.uniform(3));
    if (m.tag == Tag::Aux && m.payload.size() == 6) m.payload[5] = uint8_t(rng.uniform(m.payload[4] == 0 ? 2 : 3));
    if (m.tag == Tag::Term && rng.uniform(2)) m.payload[0] ^= 1;
    out.push_back(std::move(m));
    return out;
  };
}

StarvePlan starve_plan(uint32_t n, uint32_t f) {
  StarvePlan p;
  for (PartyId j = 2; j <= f + 2 && j <= n - f; ++j) p.victims.insert(j);
  for (PartyId j = n - f + 1; j <= n; ++j) p.corrupt.insert(j);
  return p;
}

sim::Predicate starve_sharing(const StarvePlan &plan) {
  auto suffix = "/a" + std::to_string(plan.dealer);
  return [suffix, victims = plan.victims](const sim::PendingView &v) {
    if (v.tag != Tag::AvssReady || !victims.contains(v.to)) return false;
    return v.instance.size() >= suffix.size() &&
           v.instance.compare(v.instance.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
}

TamperFn bottom_candidates(std::set<PartyId> victims) {
  return [victims = std::move(victims)](Message m, Rng &) {
    if (m.tag == Tag::Candidate && victims.contains(m.to)) m.payload = encode_triple(VrfTriple{});
    return std::vector<Message>{std::move(m)};
  };
}

TamperFn election_forgery(std::string election_id, PartyId me, uint32_t n, uint32_t f) {
  struct State {
    std::map<PartyId, VrfTriple> seen;  // RBC sender -> triple
    std::set<std::pair<PartyId, Bytes>> forged;
    bool named = false;
  };
  auto state = std::make_shared<State>();
  auto contradict = aba_contradict();
  return [=](Message m, Rng &rng) {
    std::vector<Message> out;
    auto vote_all = [&](const std::vector<BallotEntry> &g) {
      auto payload = encode_vote(g);
      for (PartyId j = 1; j <= n; ++j) out.push_back({j, election_id, Tag::Vote, payload});
    };
    if (sim::within(m.instance, child_id(election_id, 'v'))) return contradict(std::move(m), rng);
    if (m.instance == election_id && m.tag == Tag::Vote) return out;  // replaced by forgeries

    auto prefix = election_id + "/b";
    if ((m.tag == Tag::RbcSend || m.tag == Tag::RbcEcho) && m.instance.size() > prefix.size() &&
        m.instance.compare(0, prefix.size(), prefix) == 0 &&
        m.instance.find('/', prefix.size()) == std::string::npos) {
      try {
        auto j = PartyId(std::stoul(m.instance.substr(prefix.size())));
        auto t = decode_triple(m.payload);
        state->seen.emplace(j, t);
        if (j == me && !state->named) {
          // Own triple under every sender's name.
          state->named = true;
          std::vector<BallotEntry> g;
          for (PartyId k = 1; k <= n - f; ++k) g.push_back({k, t});
          vote_all(g);
        }
      } catch (const std::exception &) {
      }
    }
    if (state->seen.size() >= n - f) {
      for (const auto &[j, t] : state->seen) {
        auto key = std::make_pair(t.dealer, t.r);
        if (state->forged.contains(key)) continue;
        std::vector<BallotEntry> same, smaller;
        for (const auto &[k, u] : state->seen) {
          if (u.dealer == t.dealer && u.r == t.r)
            same.push_back({k, u});
          else if (triple_less(u, t))
            smaller.push_back({k, u});
        }
        if (same.size() < f + 1 || same.size() + smaller.size() < n - f) continue;
        state->forged.insert(key);
        std::vector<BallotEntry> g(same.begin(), same.end());
        for (std::size_t i = 0; g.size() < n - f; ++i) g.push_back(smaller[i]);
        g.resize(n - f);
        vote_all(g);
      }
    }
    out.push_back(std::move(m));
    return out;
  };
}

}  // namespace asyncbft::protocol
