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

#include "asyncbft/protocol/avss.hpp"

namespace asyncbft::protocol {

using crypto::Commitment;
using crypto::Scalar;

namespace {

constexpr std::size_t kMaxSecret = 1 << 16;

Bytes xor_bytes(ByteSpan a, ByteSpan b) {
  Bytes out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= b[i];
  return out;
}

Bytes hc_payload(const Bytes &h, const Bytes &c) {
  Writer w;
  w.bytes(h).bytes(c);
  return std::move(w).take();
}

}  // namespace

Bytes commitment_hash(const crypto::Suite &suite, const Commitment &C) {
  return suite.hash(encode_commitment(suite, C));
}

Bytes avss_pad(const crypto::Suite &suite, const Scalar &key, std::size_t len, const AvssConfig &cfg) {
  if (cfg.random_oracle) {
    Writer w;
    w.str("avss-pad").bytes(suite.encode(key));
    return suite.hash_n(w.data(), len);
  }
  if (len != suite.scalar_bytes()) throw ParameterError("plain avss secrets must be exactly one scalar wide");
  return suite.encode(key);
}

Bytes encode_sh_output(const crypto::Suite &suite, const AvssShOutput &o) {
  Writer w;
  w.bytes(o.h).bytes(o.c);
  w.u8(o.sh_a ? 1 : 0);
  if (o.sh_a) {
    suite.write(w, *o.sh_a);
    suite.write(w, *o.sh_b);
  }
  w.u8(o.cmt ? 1 : 0);
  if (o.cmt) w.raw(encode_commitment(suite, *o.cmt));
  return std::move(w).take();
}

AvssShOutput decode_sh_output(const crypto::Suite &suite, ByteSpan data) {
  Reader r(data);
  AvssShOutput o;
  o.h = r.bytes(64);
  o.c = r.bytes(kMaxSecret);
  if (r.u8()) {
    o.sh_a = suite.read_scalar(r);
    o.sh_b = suite.read_scalar(r);
  }
  if (r.u8()) o.cmt = crypto::read_commitment(suite, r);
  r.expect_done();
  return o;
}

// ---- sharing -----------------------------------------------------------------

AvssSh::AvssSh(Context ctx, std::string instance, PartyId dealer, std::optional<Bytes> secret, AvssConfig cfg)
    : ctx_{std::move(ctx)}, id_{std::move(instance)}, dealer_{dealer}, secret_{std::move(secret)}, cfg_{cfg} {
  if (!ctx_.valid_party(dealer_)) throw ParameterError("avss dealer out of range");
  if (secret_ && ctx_.me != dealer_) throw ParameterError("only the dealer has an avss secret");
  if (secret_) {
    if (secret_->size() > kMaxSecret) throw ParameterError("avss secret too long");
    if (!cfg_.random_oracle && secret_->size() != ctx_.S().scalar_bytes())
      throw ParameterError("plain avss secrets must be exactly one scalar wide");
  }
}

Step<AvssShOutput> AvssSh::start() {
  Step<Output> st;
  if (ctx_.me != dealer_ || !secret_) return st;
  const auto &S = ctx_.S();
  auto rng = ctx_.rng_for(id_ + "#deal");
  key_ = S.random_scalar(rng);
  auto sharing = crypto::shamir_share(S, *key_, ctx_.f, ctx_.n, rng);
  auto C = crypto::pedersen_commit(S, sharing.A, sharing.B);
  my_h_ = commitment_hash(S, C);
  auto cenc = encode_commitment(S, C);
  for (PartyId j = 1; j <= ctx_.n; ++j) {
    Writer w;
    w.raw(cenc);
    S.write(w, sharing.shares[j - 1].a);
    S.write(w, sharing.shares[j - 1].b);
    st.send(j, id_, Tag::KeyShare, std::move(w).take());
  }
  return st;
}

Step<AvssShOutput> AvssSh::handle(const Envelope &env) {
  Step<Output> st;
  const auto &S = ctx_.S();
  try {
    switch (env.tag) {
      case Tag::KeyShare: {
        if (env.from != dealer_ || got_keyshare_) break;
        got_keyshare_ = true;
        Reader r(env.payload);
        auto C = crypto::read_commitment(S, r, ctx_.n);
        auto a = S.read_scalar(r);
        auto b = S.read_scalar(r);
        r.expect_done();
        if (C.size() != ctx_.f + 1 || !crypto::verify_opening(S, ctx_.me, a, b, C)) break;
        c_prime_ = std::move(C);
        a_ = a;
        b_ = b;
        flag_ = true;
        st.send(dealer_, id_, Tag::Stored, ctx_.sign(id_, commitment_hash(S, c_prime_)));
        if (held_cipher_) {
          auto held = std::move(*held_cipher_);
          held_cipher_.reset();
          on_cipher(held, st);
        }
        break;
      }
      case Tag::Stored: {
        if (ctx_.me != dealer_ || !key_ || cipher_sent_) break;
        if (!ctx_.valid_party(env.from) || stored_from_.contains(env.from)) break;
        if (!ctx_.verify(env.from, id_, my_h_, env.payload)) break;
        stored_from_.insert(env.from);
        stored_.push_back({env.from, env.payload});
        if (stored_.size() == ctx_.n_minus_f()) {
          cipher_sent_ = true;
          auto c = xor_bytes(*secret_, avss_pad(S, *key_, secret_->size(), cfg_));
          Writer w;
          write_sigset(w, stored_);
          w.bytes(my_h_).bytes(c);
          st.multicast(ctx_.n, id_, Tag::Cipher, std::move(w).take());
        }
        break;
      }
      case Tag::Cipher: {
        if (env.from != dealer_ || got_cipher_ || held_cipher_) break;
        if (!flag_) {
          held_cipher_ = env;  // wait for our KeyShare
          break;
        }
        on_cipher(env, st);
        break;
      }
      case Tag::AvssEcho:
      case Tag::AvssReady:
        on_vote(env, st);
        break;
      default:
        break;
    }
  } catch (const DecodeError &) {
    // malformed payload from a corrupted party: ignore
  }
  return st;
}

void AvssSh::on_cipher(const Envelope &env, Step<Output> &st) {
  got_cipher_ = true;
  const auto &S = ctx_.S();
  Reader r(env.payload);
  auto pi = read_sigset(r, ctx_.n);
  auto h = r.bytes(64);
  auto c = r.bytes(kMaxSecret);
  r.expect_done();
  if (h != commitment_hash(S, c_prime_)) return;
  if (!check_sigset(ctx_, id_, pi, h, ctx_.n_minus_f())) return;
  if (!cfg_.random_oracle && c.size() != S.scalar_bytes()) return;
  result_.sh_a = a_;
  result_.sh_b = b_;
  result_.cmt = c_prime_;
  if (!echoed_) {
    echoed_ = true;
    st.multicast(ctx_.n, id_, Tag::AvssEcho, hc_payload(h, c));
  }
}

void AvssSh::on_vote(const Envelope &env, Step<Output> &st) {
  bool echo = env.tag == Tag::AvssEcho;
  auto &from = echo ? echo_from_ : ready_from_;
  if (!ctx_.valid_party(env.from) || from.contains(env.from)) return;
  Reader r(env.payload);
  auto h = r.bytes(64);
  auto c = r.bytes(kMaxSecret);
  r.expect_done();
  from.insert(env.from);
  auto &box = (echo ? echo_ : ready_)[env.payload];
  box.insert(env.from);
  auto ready_count = ready_[env.payload].size();
  if (!readied_ && ((echo && box.size() >= ctx_.quorum()) || (!echo && ready_count >= ctx_.f + 1))) {
    readied_ = true;
    st.multicast(ctx_.n, id_, Tag::AvssReady, env.payload);
  }
  if (!done_ && !echo && ready_count >= ctx_.quorum()) {
    done_ = true;
    result_.h = std::move(h);
    result_.c = std::move(c);
    // sh/cmt stay as set by our own Cipher handling, if any
    if (result_.cmt && commitment_hash(ctx_.S(), *result_.cmt) != result_.h) {
      result_.sh_a.reset();
      result_.sh_b.reset();
      result_.cmt.reset();
    }
    st.output = result_;
  }
}

// ---- reconstruction ------------------------------------------------------------

AvssRec::AvssRec(Context ctx, std::string instance, AvssShOutput input, AvssConfig cfg)
    : ctx_{std::move(ctx)}, id_{std::move(instance)}, in_{std::move(input)}, cfg_{cfg} {}

Step<Bytes> AvssRec::start() {
  Step<Bytes> st;
  if (in_.sh_a && in_.sh_b && in_.cmt) {
    Writer w;
    ctx_.S().write(w, *in_.sh_a);
    ctx_.S().write(w, *in_.sh_b);
    w.bytes(in_.h);
    st.multicast(ctx_.n, id_, Tag::KeyRec, std::move(w).take());
  }
  return st;
}

Step<Bytes> AvssRec::handle(const Envelope &env) {
  Step<Bytes> st;
  if (done_ || !ctx_.valid_party(env.from)) return st;
  const auto &S = ctx_.S();
  try {
    if (env.tag == Tag::KeyRec) {
      if (key_sent_ || !keyrec_from_.insert(env.from).second) return st;
      Reader r(env.payload);
      auto a = S.read_scalar(r);
      auto b = S.read_scalar(r);
      auto h = r.bytes(64);
      r.expect_done();
      if (!in_.cmt || h != in_.h || commitment_hash(S, *in_.cmt) != h) return st;
      if (!crypto::verify_opening(S, env.from, a, b, *in_.cmt)) return st;
      phi_.push_back({env.from, a});
      if (phi_.size() == ctx_.f + 1) {
        key_sent_ = true;
        auto key = crypto::interpolate_at_zero(S, phi_, ctx_.f);
        st.multicast(ctx_.n, id_, Tag::Key, S.encode(key));
      }
    } else if (env.tag == Tag::Key) {
      if (!key_from_.insert(env.from).second) return st;
      Reader r(env.payload);
      auto key = S.read_scalar(r);
      r.expect_done();
      auto &cnt = keys_[env.payload];
      if (++cnt == ctx_.f + 1) {
        if (!cfg_.random_oracle && in_.c.size() != S.scalar_bytes()) return st;
        done_ = true;
        st.output = xor_bytes(in_.c, avss_pad(S, key, in_.c.size(), cfg_));
      }
    }
  } catch (const DecodeError &) {
  }
  return st;
}

// ---- pipeline ------------------------------------------------------------------

AvssPipeline::AvssPipeline(Context ctx, std::string instance, PartyId dealer, std::optional<Bytes> secret,
                           AvssConfig cfg)
    : ctx_{ctx}, id_{instance}, rec_id_{child_id(instance, 'r')}, cfg_{cfg},
      sh_{std::move(ctx), std::move(instance), dealer, std::move(secret), cfg} {}

Step<AvssPipeline::Output> AvssPipeline::start() {
  Step<Output> st;
  auto s = sh_.start();
  st.absorb(s);
  return st;
}

Step<AvssPipeline::Output> AvssPipeline::handle(const Envelope &env) {
  Step<Output> st;
  if (env.instance == rec_id_) {
    if (!rec_) {
      held_.push_back(env);
      return st;
    }
    take(rec_->handle(env), st);
    return st;
  }
  if (env.instance != id_) return st;
  auto s = sh_.handle(env);
  st.absorb(s);
  if (s.output && !sh_out_) {
    sh_out_ = *s.output;
    rec_ = std::make_unique<AvssRec>(ctx_, rec_id_, *sh_out_, cfg_);
    take(rec_->start(), st);
    for (auto &e : std::exchange(held_, {})) take(rec_->handle(e), st);
  }
  return st;
}

void AvssPipeline::take(Step<Bytes> rs, Step<Output> &st) {
  st.absorb(rs);
  if (rs.output && !done_) {
    done_ = true;
    st.output = Output{*sh_out_, *rs.output};
  }
}

Bytes encode_pipeline_output(const AvssPipeline::Output &o) { return o.secret; }

}  // namespace asyncbft::protocol
