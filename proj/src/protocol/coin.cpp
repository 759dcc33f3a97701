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

#include "asyncbft/protocol/coin.hpp"

#include <algorithm>

namespace asyncbft::protocol {

Bytes encode_triple(const VrfTriple &t) {
  Writer w;
  w.u32(t.dealer).bytes(t.r).bytes(t.proof);
  return std::move(w).take();
}

VrfTriple decode_triple(ByteSpan data) {
  Reader r(data);
  VrfTriple t;
  t.dealer = r.u32();
  t.r = r.bytes(256);
  t.proof = r.bytes(1024);
  r.expect_done();
  return t;
}

Bytes encode_coin_output(const CoinOutput &o) {
  Bytes out{uint8_t(o.bit)};
  auto t = encode_triple(o.max);
  out.insert(out.end(), t.begin(), t.end());
  return out;
}

bool triple_less(const VrfTriple &a, const VrfTriple &b) {
  auto c = crypto::compare_be(a.r, b.r);
  if (c != 0) return c < 0;
  return a.dealer > b.dealer;
}

Bytes index_set_hash(const crypto::Suite &S, const std::vector<PartyId> &set) {
  Writer w;
  w.str("index-set").u32(uint32_t(set.size()));
  for (auto p : set) w.u32(p);
  return S.hash(w.data());
}

namespace {

Bytes encode_set(const std::vector<PartyId> &set) {
  Writer w;
  w.u32(uint32_t(set.size()));
  for (auto p : set) w.u32(p);
  return std::move(w).take();
}

Bytes encode_vrf(const crypto::VrfOutput &o) {
  Writer w;
  w.bytes(o.r).bytes(o.proof);
  return std::move(w).take();
}

}  // namespace

Coin::Coin(Context ctx, std::string instance, CoinConfig cfg)
    : ctx_{std::move(ctx)}, id_{std::move(instance)}, cfg_{std::move(cfg)}, seeds_(ctx_.n + 1) {
  if ((cfg_.mode == CoinMode::Genesis) != !cfg_.genesis_nonce.empty())
    throw ParameterError("genesis nonce must be given exactly in genesis mode");
}

Step<CoinOutput> Coin::start() {
  Step<Output> st;
  if (cfg_.mode == CoinMode::Genesis) {
    for (PartyId j = 1; j <= ctx_.n; ++j) on_seed(j, cfg_.genesis_nonce, st);
  } else {
    for (PartyId j = 1; j <= ctx_.n; ++j) {
      auto child = std::make_unique<Seeding>(ctx_, child_id(id_, 's', j), j);
      auto s = child->start();
      st.absorb(s);
      seeding_.emplace(j, std::move(child));
    }
  }
  return st;
}

Step<CoinOutput> Coin::handle(const Envelope &env) {
  Step<Output> st;
  if (env.instance != id_) {
    step_child(env, st);
    return st;
  }
  if (!ctx_.valid_party(env.from)) return st;
  const auto &S = ctx_.S();
  try {
    switch (env.tag) {
      case Tag::Lock: {
        if (!lock_from_.insert(env.from).second) break;
        Reader r(env.payload);
        auto len = r.u32();
        if (len != ctx_.n_minus_f()) break;
        std::vector<PartyId> set;
        for (uint32_t i = 0; i < len; ++i) set.push_back(r.u32());
        r.expect_done();
        std::sort(set.begin(), set.end());
        if (std::adjacent_find(set.begin(), set.end()) != set.end()) break;
        if (!ctx_.valid_party(set.front()) || !ctx_.valid_party(set.back())) break;
        pending_locks_.push_back({env.from, std::move(set)});
        try_locks(st);
        break;
      }
      case Tag::Confirm: {
        if (!s_tilde_ || commit_sent_ || confirm_from_.contains(env.from)) break;
        if (!ctx_.verify(env.from, id_, s_tilde_h_, env.payload)) break;
        confirm_from_.insert(env.from);
        sigma_.push_back({env.from, env.payload});
        if (sigma_.size() == ctx_.n_minus_f()) {
          commit_sent_ = true;
          Writer w;
          write_sigset(w, sigma_);
          w.bytes(s_tilde_h_);
          st.multicast(ctx_.n, id_, Tag::Commit, std::move(w).take());
        }
        break;
      }
      case Tag::Commit: {
        if (!commit_from_.insert(env.from).second || s_hat_) break;
        Reader r(env.payload);
        auto sigma = read_sigset(r, ctx_.n);
        auto h = r.bytes(64);
        r.expect_done();
        if (!check_sigset(ctx_, id_, sigma, h, ctx_.n_minus_f())) break;
        s_hat_ = s_;
        if (ctx_.probe) ctx_.probe->coin_commit_accepted(ctx_.me, id_, h);
        for (auto k : *s_hat_) {
          Writer w;
          w.u32(k);
          st.multicast(ctx_.n, id_, Tag::RecRequest, std::move(w).take());
        }
        for (auto k : rec_requested_) try_rec(k, st);
        break;
      }
      case Tag::RecRequest: {
        Reader r(env.payload);
        auto k = r.u32();
        r.expect_done();
        if (!ctx_.valid_party(k) || !rec_requested_.insert(k).second) break;
        try_rec(k, st);
        break;
      }
      case Tag::Candidate: {
        if (!cand_from_.insert(env.from).second) break;
        auto t = decode_triple(env.payload);
        if (t.dealer == 0) {
          ++x_;
          try_output(st);
          break;
        }
        if (!ctx_.valid_party(t.dealer)) break;
        Candidate c{env.from, std::move(t)};
        if (seeds_[c.t.dealer]) {
          take_candidate(c, st);
        } else {
          pending_cands_.push_back(std::move(c));  // counts toward neither C nor X yet
        }
        break;
      }
      default:
        break;
    }
  } catch (const DecodeError &) {
  }
  (void)S;
  return st;
}

void Coin::step_child(const Envelope &env, Step<Output> &st) {
  // "<id>/<kind><j>"
  const auto &inst = env.instance;
  if (inst.size() < id_.size() + 3 || inst.compare(0, id_.size(), id_) != 0 || inst[id_.size()] != '/') return;
  char kind = inst[id_.size() + 1];
  auto digits = std::string_view(inst).substr(id_.size() + 2);
  if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return;
  PartyId j = PartyId(std::stoul(std::string(digits)));
  if (!ctx_.valid_party(j) || child_id(id_, kind, j) != inst) return;

  if (kind == 's') {
    auto it = seeding_.find(j);
    if (it == seeding_.end()) return;
    auto s = it->second->handle(env);
    st.absorb(s);
    if (s.output && !seeds_[j]) on_seed(j, *s.output, st);
  } else if (kind == 'a') {
    auto it = sh_.find(j);
    if (it == sh_.end()) {
      held_[inst].push_back(env);
      return;
    }
    auto s = it->second->handle(env);
    st.absorb(s);
    if (s.output && !sh_out_.contains(j)) on_sh(j, std::move(*s.output), st);
  } else if (kind == 'r') {
    auto it = rec_.find(j);
    if (it == rec_.end()) {
      held_[inst].push_back(env);
      return;
    }
    auto s = it->second->handle(env);
    st.absorb(s);
    if (s.output && !rec_out_.contains(j)) on_rec(j, *s.output, st);
  }
}

void Coin::replay(const std::string &child, Step<Output> &st) {
  auto it = held_.find(child);
  if (it == held_.end()) return;
  auto envs = std::move(it->second);
  held_.erase(it);
  for (const auto &e : envs) step_child(e, st);
}

void Coin::on_seed(PartyId j, Bytes seed, Step<Output> &st) {
  seeds_[j] = std::move(seed);
  std::optional<Bytes> secret;
  if (j == ctx_.me) {
    auto v = crypto::vrf_eval(ctx_.S(), *ctx_.keys, id_, *seeds_[j]);
    secret = encode_vrf(v);
  }
  auto cid = child_id(id_, 'a', j);
  auto child = std::make_unique<AvssSh>(ctx_, cid, j, std::move(secret), cfg_.avss);
  auto s = child->start();
  st.absorb(s);
  sh_.emplace(j, std::move(child));
  replay(cid, st);

  // Candidates waiting on this seed.
  std::vector<Candidate> still;
  for (auto &c : std::exchange(pending_cands_, {})) {
    if (c.t.dealer == j)
      take_candidate(c, st);
    else
      still.push_back(std::move(c));
  }
  for (auto &c : still) pending_cands_.push_back(std::move(c));
}

void Coin::on_sh(PartyId j, AvssShOutput out, Step<Output> &st) {
  sh_out_.emplace(j, std::move(out));
  s_.insert(j);
  if (ctx_.probe) ctx_.probe->coin_set(ctx_.me, id_, s_);
  if (!s_tilde_ && s_.size() == ctx_.n_minus_f()) {
    s_tilde_ = std::vector<PartyId>(s_.begin(), s_.end());
    s_tilde_h_ = index_set_hash(ctx_.S(), *s_tilde_);
    st.multicast(ctx_.n, id_, Tag::Lock, encode_set(*s_tilde_));
  }
  try_locks(st);
  if (rec_requested_.contains(j)) try_rec(j, st);
}

void Coin::try_locks(Step<Output> &st) {
  std::vector<std::pair<PartyId, std::vector<PartyId>>> still;
  for (auto &[from, set] : std::exchange(pending_locks_, {})) {
    bool covered = std::all_of(set.begin(), set.end(), [&](PartyId k) { return s_.contains(k); });
    if (!covered) {
      still.push_back({from, std::move(set)});
      continue;
    }
    auto h = index_set_hash(ctx_.S(), set);
    if (ctx_.probe) ctx_.probe->coin_lock_signed(ctx_.me, id_, h, set);
    st.send(from, id_, Tag::Confirm, ctx_.sign(id_, h));
  }
  pending_locks_ = std::move(still);
}

void Coin::try_rec(PartyId k, Step<Output> &st) {
  if (!s_hat_ || !sh_out_.contains(k) || rec_.contains(k)) return;
  auto cid = child_id(id_, 'r', k);
  auto child = std::make_unique<AvssRec>(ctx_, cid, sh_out_.at(k), cfg_.avss);
  auto s = child->start();
  st.absorb(s);
  rec_.emplace(k, std::move(child));
  replay(cid, st);
}

void Coin::on_rec(PartyId k, const Bytes &m, Step<Output> &st) {
  std::optional<crypto::VrfOutput> v;
  try {
    Reader r(m);
    crypto::VrfOutput o;
    o.r = r.bytes(256);
    o.proof = r.bytes(1024);
    r.expect_done();
    v = std::move(o);
  } catch (const DecodeError &) {
  }
  rec_out_.emplace(k, std::move(v));
  try_candidate(st);
}

void Coin::try_candidate(Step<Output> &st) {
  if (candidate_sent_ || !s_hat_) return;
  for (auto k : *s_hat_)
    if (!rec_out_.contains(k)) return;
  candidate_sent_ = true;
  std::optional<VrfTriple> best;
  for (auto k : *s_hat_) {
    const auto &v = rec_out_.at(k);
    if (!v || !ctx_.dir->vrf_verify(k, id_, *seeds_[k], *v)) continue;
    VrfTriple t{k, v->r, v->proof};
    if (!best || triple_less(*best, t)) best = std::move(t);
  }
  st.multicast(ctx_.n, id_, Tag::Candidate, encode_triple(best ? *best : VrfTriple{}));
}

void Coin::take_candidate(const Candidate &c, Step<Output> &st) {
  crypto::VrfOutput v{c.t.r, c.t.proof};
  if (ctx_.dir->vrf_verify(c.t.dealer, id_, *seeds_[c.t.dealer], v)) c_.emplace(c.from, c.t);
  try_output(st);
}

void Coin::try_output(Step<Output> &st) {
  if (done_ || c_.size() + x_ < ctx_.n_minus_f()) return;
  if (c_.empty()) {
    if (!deferred_ && ctx_.probe) ctx_.probe->note(ctx_.me, id_, "coin output deferred: all candidates are bottom");
    deferred_ = true;
    return;
  }
  done_ = true;
  const VrfTriple *best = nullptr;
  for (const auto &[from, t] : c_)
    if (!best || triple_less(*best, t)) best = &t;
  if (ctx_.probe) ctx_.probe->coin_output(ctx_.me, id_, c_.size(), x_);
  st.output = CoinOutput{bool(best->r.back() & 1), *best};
}

}  // namespace asyncbft::protocol
