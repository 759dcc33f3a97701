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

#include "asyncbft/protocol/seeding.hpp"

namespace asyncbft::protocol {

Bytes seed_from_secret(const crypto::Suite &S, const crypto::Point &secret) {
  Writer w;
  w.str("seed").raw(S.encode(secret));
  return S.hash(w.data());
}

Seeding::Seeding(Context ctx, std::string instance, PartyId leader)
    : ctx_{std::move(ctx)}, id_{std::move(instance)}, leader_{leader}, params_{ctx_.n, ctx_.f, id_} {
  if (!ctx_.valid_party(leader_)) throw ParameterError("seeding leader out of range");
}

Step<Bytes> Seeding::start() {
  Step<Bytes> st;
  auto rng = ctx_.rng_for(id_ + "#deal");
  auto script = pvss::deal(params_, *ctx_.dir, ctx_.me, *ctx_.keys, rng);
  st.send(leader_, id_, Tag::PvssScript, pvss::encode(ctx_.S(), script));
  return st;
}

Step<Bytes> Seeding::handle(const Envelope &env) {
  Step<Bytes> st;
  if (!ctx_.valid_party(env.from)) return st;
  try {
    switch (env.tag) {
      case Tag::PvssScript:
      case Tag::ConfirmAggPvss:
      case Tag::SeedShare:
        if (ctx_.me == leader_) leader_step(env, st);
        break;
      case Tag::LockAggPvss:
        on_lock(env, st);
        break;
      case Tag::CommitAggPvss:
        on_commit(env, st);
        break;
      case Tag::Seed:
        on_seed(env, st);
        break;
      case Tag::SeedEcho:
      case Tag::SeedReady:
        on_amplify(env, st);
        break;
      default:
        break;
    }
  } catch (const DecodeError &) {
  } catch (const ParameterError &) {
    // structurally valid but unusable input from a corrupted party
  }
  return st;
}

void Seeding::leader_step(const Envelope &env, Step<Bytes> &st) {
  const auto &S = ctx_.S();
  if (env.tag == Tag::PvssScript) {
    if (locked_ || k_.contains(env.from)) return;
    auto script = pvss::decode(S, env.payload, ctx_.n);
    if (!pvss::vrfy_script(params_, *ctx_.dir, script)) return;
    auto w = pvss::weights(params_, script);
    for (PartyId j = 1; j <= ctx_.n; ++j)
      if (w[j - 1] != (j == env.from ? 1u : 0u)) return;
    k_.emplace(env.from, std::move(script));
    if (k_.size() == params_.t()) {
      locked_ = true;
      std::vector<pvss::Script> all;
      for (auto &[j, s] : k_) all.push_back(s);
      agg_ = pvss::aggregate(S, all);
      agg_h_ = pvss::script_hash(S, *agg_);
      st.multicast(ctx_.n, id_, Tag::LockAggPvss, pvss::encode(S, *agg_));
    }
  } else if (env.tag == Tag::ConfirmAggPvss) {
    if (!agg_ || committed_ || confirm_from_.contains(env.from)) return;
    if (!ctx_.verify(env.from, id_, agg_h_, env.payload)) return;
    confirm_from_.insert(env.from);
    sigma_.push_back({env.from, env.payload});
    if (sigma_.size() == params_.t()) {
      committed_ = true;
      Writer w;
      w.bytes(agg_h_);
      write_sigset(w, sigma_);
      st.multicast(ctx_.n, id_, Tag::CommitAggPvss, std::move(w).take());
    }
  } else if (env.tag == Tag::SeedShare) {
    if (!committed_ || seeded_ || share_from_.contains(env.from)) return;
    Reader r(env.payload);
    auto share = pvss::read_share(S, r);
    r.expect_done();
    if (share.index != env.from || !pvss::vrfy_share(params_, *ctx_.dir, env.from, share, *agg_)) return;
    share_from_.insert(env.from);
    shares_.push_back(share);
    if (shares_.size() == params_.t()) {
      seeded_ = true;
      auto secret = pvss::agg_shares(params_, *ctx_.dir, *agg_, shares_);
      Writer w;
      w.bytes(agg_h_);
      write_sigset(w, sigma_);
      S.write(w, secret);
      w.u32(uint32_t(shares_.size()));
      for (const auto &sh : shares_) pvss::write_share(S, w, sh);
      st.multicast(ctx_.n, id_, Tag::Seed, std::move(w).take());
    }
  }
}

void Seeding::on_lock(const Envelope &env, Step<Bytes> &st) {
  if (env.from != leader_ || got_lock_) return;
  got_lock_ = true;
  const auto &S = ctx_.S();
  auto script = pvss::decode(S, env.payload, ctx_.n);
  if (!pvss::vrfy_script(params_, *ctx_.dir, script)) return;
  auto w = pvss::weights(params_, script);
  uint32_t nonzero = 0;
  for (auto x : w) nonzero += x != 0;
  if (nonzero != params_.t()) return;
  pvss_h_ = pvss::script_hash(S, script);
  pvss_ = std::move(script);
  st.send(leader_, id_, Tag::ConfirmAggPvss, ctx_.sign(id_, pvss_h_));
  if (held_commit_) {
    auto e = std::move(*held_commit_);
    held_commit_.reset();
    on_commit(e, st);
  }
  if (held_seed_) {
    auto e = std::move(*held_seed_);
    held_seed_.reset();
    on_seed(e, st);
  }
}

void Seeding::on_commit(const Envelope &env, Step<Bytes> &st) {
  if (env.from != leader_ || got_commit_) return;
  if (!pvss_) {
    if (!held_commit_) held_commit_ = env;  // Lock still in flight
    return;
  }
  got_commit_ = true;
  Reader r(env.payload);
  auto h = r.bytes(64);
  auto sigma = read_sigset(r, ctx_.n);
  r.expect_done();
  if (h != pvss_h_ || !check_sigset(ctx_, id_, sigma, h, params_.t())) return;
  revealing_ = true;
  auto share = pvss::get_share(params_, ctx_.S(), ctx_.me, *ctx_.keys, *pvss_);
  Writer w;
  pvss::write_share(ctx_.S(), w, share);
  st.send(leader_, id_, Tag::SeedShare, std::move(w).take());
}

void Seeding::on_seed(const Envelope &env, Step<Bytes> &st) {
  if (env.from != leader_ || got_seed_) return;
  if (!pvss_) {
    if (!held_seed_) held_seed_ = env;  // may never be checkable; amplification covers us
    return;
  }
  got_seed_ = true;
  const auto &S = ctx_.S();
  Reader r(env.payload);
  auto h = r.bytes(64);
  auto sigma = read_sigset(r, ctx_.n);
  auto secret = S.read_point(r);
  auto cnt = r.u32();
  if (cnt != params_.t()) return;
  std::vector<pvss::Share> evidence;
  for (uint32_t i = 0; i < cnt; ++i) evidence.push_back(pvss::read_share(S, r));
  r.expect_done();
  if (h != pvss_h_ || !check_sigset(ctx_, id_, sigma, h, params_.t())) return;
  if (!pvss::vrfy_secret(params_, *ctx_.dir, secret, evidence, *pvss_)) return;
  if (!echoed_) {
    echoed_ = true;
    st.multicast(ctx_.n, id_, Tag::SeedEcho, seed_from_secret(S, secret));
  }
}

void Seeding::on_amplify(const Envelope &env, Step<Bytes> &st) {
  bool echo = env.tag == Tag::SeedEcho;
  auto &from = echo ? echo_from_ : ready_from_;
  if (env.payload.size() != ctx_.S().hash_bytes() || !from.insert(env.from).second) return;
  auto &box = (echo ? echo_ : ready_)[env.payload];
  box.insert(env.from);
  auto readies = ready_[env.payload].size();
  if (!readied_ && ((echo && box.size() >= ctx_.quorum()) || (!echo && readies >= ctx_.f + 1))) {
    readied_ = true;
    st.multicast(ctx_.n, id_, Tag::SeedReady, env.payload);
  }
  if (!done_ && readies >= ctx_.quorum()) {
    done_ = true;
    st.output = env.payload;
  }
}

}  // namespace asyncbft::protocol
