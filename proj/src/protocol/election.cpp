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

#include "asyncbft/protocol/election.hpp"

#include <algorithm>

namespace asyncbft::protocol {

Bytes encode_election_output(const ElectionOutput &o) {
  Writer w;
  w.u32(o.index);
  return std::move(w).take();
}

PartyId index_of(ByteSpan r, uint32_t n) {
  uint64_t acc = 0;
  for (auto b : r) acc = (acc * 256 + b) % n;
  return PartyId(acc + 1);
}

Bytes encode_vote(const std::vector<BallotEntry> &g) {
  Writer w;
  w.u32(uint32_t(g.size()));
  for (const auto &e : g) w.u32(e.from).bytes(encode_triple(e.t));
  return std::move(w).take();
}

std::vector<BallotEntry> decode_vote(ByteSpan data, uint32_t n) {
  Reader r(data);
  auto at = r.offset();
  auto len = r.u32();
  if (len > n) throw DecodeError("vote larger than n", at);
  std::vector<BallotEntry> g;
  for (uint32_t i = 0; i < len; ++i) {
    BallotEntry e;
    e.from = r.u32();
    e.t = decode_triple(r.bytes(2048));
    g.push_back(std::move(e));
  }
  r.expect_done();
  return g;
}

std::optional<VrfTriple> vote_winner(const std::vector<BallotEntry> &g, uint32_t f) {
  if (g.empty()) return std::nullopt;
  const VrfTriple *best = &g.front().t;
  for (const auto &e : g)
    if (triple_less(*best, e.t)) best = &e.t;
  auto count = std::count_if(g.begin(), g.end(), [&](const BallotEntry &e) {
    return e.t.dealer == best->dealer && e.t.r == best->r;
  });
  if (std::size_t(count) < f + 1) return std::nullopt;
  return *best;
}

Election::Election(Context ctx, std::string instance, ElectionConfig cfg)
    : ctx_{std::move(ctx)}, id_{std::move(instance)}, cfg_{std::move(cfg)} {
  if (!cfg_.aba) cfg_.aba = AbaCoin{AbaCoin::Protocol, cfg_.coin, {}};
  coin_ = std::make_unique<Coin>(ctx_, child_id(id_, 'k'), cfg_.coin);
  for (PartyId j = 1; j <= ctx_.n; ++j) rbc_[j] = std::make_unique<Rbc>(ctx_, child_id(id_, 'b', j), j);
}

Step<ElectionOutput> Election::start() {
  Step<Output> st;
  for (auto &[j, r] : rbc_) {
    auto s = r->start();
    st.absorb(s);
  }
  auto s = coin_->start();
  st.absorb(s);
  if (s.output) on_coin(*s.output, st);
  return st;
}

Step<ElectionOutput> Election::handle(const Envelope &env) {
  Step<Output> st;
  const auto &in = env.instance;
  auto coin_id = child_id(id_, 'k');
  auto aba_id = child_id(id_, 'v');
  if (sim::within(in, coin_id)) {
    auto s = coin_->handle(env);
    st.absorb(s);
    if (s.output) on_coin(*s.output, st);
    try_entries(st);  // a seed may have just become known
    return st;
  }
  if (sim::within(in, aba_id)) {
    if (!aba_) {
      aba_held_.push_back(env);
      return st;
    }
    auto s = aba_->handle(env);
    st.absorb(s);
    if (s.output) on_aba(s.output->bit, st);
    return st;
  }
  auto prefix = id_ + "/b";
  if (in.size() > prefix.size() && in.compare(0, prefix.size(), prefix) == 0) {
    auto digits = in.substr(prefix.size());
    if (digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos) return st;
    auto j = PartyId(std::stoul(digits));
    auto it = rbc_.find(j);
    if (it == rbc_.end() || child_id(id_, 'b', j) != in) return st;
    auto s = it->second->handle(env);
    st.absorb(s);
    if (s.output) on_rbc(j, *s.output, st);
    return st;
  }
  if (in != id_ || env.tag != Tag::Vote || !ctx_.valid_party(env.from)) return st;
  if (vote_count_[env.from] >= ctx_.n) return st;  // bounded per sender
  try {
    auto g = decode_vote(env.payload, ctx_.n);
    if (g.size() != ctx_.n_minus_f()) return st;
    std::set<PartyId> from;
    for (const auto &e : g)
      if (!ctx_.valid_party(e.from) || !from.insert(e.from).second) return st;
    ++vote_count_[env.from];
    votes_.push_back(std::move(g));
    try_votes(st);
  } catch (const DecodeError &) {
  }
  return st;
}

void Election::on_coin(const CoinOutput &o, Step<Output> &st) {
  auto s = rbc_.at(ctx_.me)->input(encode_triple(o.max));
  st.absorb(s);
  if (s.output) on_rbc(ctx_.me, *s.output, st);
}

void Election::on_rbc(PartyId j, const Bytes &value, Step<Output> &st) {
  try {
    auto t = decode_triple(value);
    if (!ctx_.valid_party(t.dealer)) return;
    unverified_.push_back({j, std::move(t)});
  } catch (const DecodeError &) {
    return;
  }
  try_entries(st);
}

void Election::try_entries(Step<Output> &st) {
  bool grew = false;
  for (auto it = unverified_.begin(); it != unverified_.end();) {
    const auto &seed = coin_->seed(it->second.dealer);
    if (!seed) {
      ++it;
      continue;
    }
    crypto::VrfOutput v{it->second.r, it->second.proof};
    if (ctx_.dir->vrf_verify(it->second.dealer, coin_->instance(), *seed, v)) {
      g_.push_back({it->first, std::move(it->second)});
      grew = true;
    }
    it = unverified_.erase(it);
  }
  if (!grew) return;
  if (!ballot_ && g_.size() >= ctx_.n_minus_f()) {
    auto w = vote_winner(g_, ctx_.f);
    ballot_ = w.has_value();
    if (*ballot_) st.multicast(ctx_.n, id_, Tag::Vote, encode_vote(g_));
    start_aba(*ballot_, st);
  }
  try_votes(st);
}

void Election::start_aba(bool ballot, Step<Output> &st) {
  aba_ = std::make_unique<Aba>(ctx_, child_id(id_, 'v'), *cfg_.aba, ballot);
  auto s = aba_->start();
  st.absorb(s);
  std::optional<bool> out;
  if (s.output) out = s.output->bit;
  auto held = std::move(aba_held_);
  aba_held_.clear();
  for (const auto &e : held) {
    auto s2 = aba_->handle(e);
    st.absorb(s2);
    if (s2.output && !out) out = s2.output->bit;
  }
  if (out) on_aba(*out, st);
}

void Election::on_aba(bool bit, Step<Output> &st) {
  if (aba_out_) return;
  aba_out_ = bit;
  if (!bit) {
    done_ = true;
    st.output = ElectionOutput{1, true, {}};
    return;
  }
  try_votes(st);
}

void Election::try_votes(Step<Output> &st) {
  if (done_ || !aba_out_ || !*aba_out_) return;
  for (const auto &g : votes_) {
    bool sub = std::all_of(g.begin(), g.end(), [&](const BallotEntry &e) {
      return std::find(g_.begin(), g_.end(), e) != g_.end();
    });
    if (!sub) continue;
    auto w = vote_winner(g, ctx_.f);
    if (!w) continue;
    done_ = true;
    st.output = ElectionOutput{index_of(w->r, ctx_.n), false, *w};
    return;
  }
}

}  // namespace asyncbft::protocol
