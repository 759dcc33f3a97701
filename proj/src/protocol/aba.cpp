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

#include "asyncbft/protocol/aba.hpp"

namespace asyncbft::protocol {

namespace {

Bytes val_payload(uint32_t r, uint8_t v) {
  Writer w;
  w.u32(r).u8(v);
  return std::move(w).take();
}

Bytes aux_payload(uint32_t r, int phase, uint8_t v) {
  Writer w;
  w.u32(r).u8(uint8_t(phase)).u8(v);
  return std::move(w).take();
}

}  // namespace

Bytes encode_aba_output(const AbaOutput &o) { return Bytes{uint8_t(o.bit)}; }

Aba::Aba(Context ctx, std::string instance, AbaCoin coin, std::optional<bool> input)
    : ctx_{std::move(ctx)}, id_{std::move(instance)}, coin_{std::move(coin)}, input_{input} {
  if (coin_.kind == AbaCoin::Perfect && coin_.perfect_seed.empty())
    throw ParameterError("perfect coin fixture needs a seed");
}

Step<AbaOutput> Aba::start() {
  started_ = true;
  Step<Output> st;
  if (input_ && !running_) {
    running_ = true;
    est_ = *input_;
    bv_send(r_, 0, est_, st);
    progress(st);
  }
  return st;
}

Step<AbaOutput> Aba::input(bool b) {
  if (input_) throw ParameterError("aba input already set");
  input_ = b;
  return started_ ? start() : Step<Output>{};
}

void Aba::bv_send(uint32_t r, int phase, uint8_t v, Step<Output> &st) {
  auto &ph = phase == 0 ? round(r).a : round(r).b;
  if (ph.sent[v]) return;
  ph.sent[v] = true;
  st.multicast(ctx_.n, id_, phase == 0 ? Tag::Val : Tag::Conf, val_payload(r, v));
}

Step<AbaOutput> Aba::handle(const Envelope &env) {
  Step<Output> st;
  if (halted_) return st;
  if (env.instance != id_) {
    // coin child "<id>/c<r>" and everything below it
    auto prefix = id_ + "/c";
    if (env.instance.compare(0, prefix.size(), prefix) != 0) return st;
    auto rest = env.instance.substr(prefix.size());
    auto digits = rest.substr(0, rest.find('/'));
    if (digits.empty() || digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos) return st;
    uint32_t r = uint32_t(std::stoul(digits));
    auto key = child_id(id_, 'c', r);
    if (!sim::within(env.instance, key)) return st;
    auto it = rounds_.find(r);
    if (it == rounds_.end() || !it->second.coin) {
      held_[key].push_back(env);
      return st;
    }
    auto s = it->second.coin->handle(env);
    st.absorb(s);
    if (s.output && !it->second.coin_out) {
      it->second.coin_out = s.output->bit;
      progress(st);
    }
    return st;
  }
  if (!ctx_.valid_party(env.from)) return st;
  try {
    Reader rd(env.payload);
    if (env.tag == Tag::Term) {
      auto b = rd.u8();
      rd.expect_done();
      if (b > 1 || !term_from_.insert(env.from).second) return st;
      term_[b].insert(env.from);
      if (term_[b].size() >= ctx_.f + 1 && !decided_) decide(b, st);
      if (term_[b].size() >= ctx_.quorum()) halted_ = true;
      return st;
    }
    auto r = rd.u32();
    switch (env.tag) {
      case Tag::Val:
      case Tag::Conf: {
        auto v = rd.u8();
        rd.expect_done();
        int phase = env.tag == Tag::Val ? 0 : 1;
        if (v > (phase == 0 ? 1 : kBottom)) break;
        auto &ph = phase == 0 ? round(r).a : round(r).b;
        if (!ph.from[v].insert(env.from).second) break;
        if (ph.from[v].size() >= ctx_.quorum() && !(ph.bin & (1u << v))) {
          ph.bin |= uint8_t(1u << v);
          if (ph.first < 0) ph.first = v;
        }
        break;
      }
      case Tag::Aux: {
        auto phase = rd.u8();
        auto v = rd.u8();
        rd.expect_done();
        if (phase > 1 || v > (phase == 0 ? 1 : kBottom)) break;
        (phase == 0 ? round(r).a : round(r).b).aux.try_emplace(env.from, v);
        break;
      }
      default:
        return st;
    }
    if (running_) progress(st);
  } catch (const DecodeError &) {
  }
  return st;
}

// Relays, Aux, and the covered-Aux check for one phase of round r. True once
// the phase's value set is known.
bool Aba::phase_step(uint32_t r, int phase, Step<Output> &st) {
  auto &ph = phase == 0 ? round(r).a : round(r).b;
  for (uint8_t v = 0; v < 3; ++v)
    if (ph.from[v].size() >= ctx_.f + 1) bv_send(r, phase, v, st);
  if (ph.bin && !ph.aux_sent) {
    ph.aux_sent = true;
    st.multicast(ctx_.n, id_, Tag::Aux, aux_payload(r, phase, uint8_t(ph.first)));
  }
  if (ph.aux_sent && !ph.vals) {
    std::size_t ok = 0;
    uint8_t vals = 0;
    for (const auto &[p, v] : ph.aux) {
      if (ph.bin & (1u << v)) {
        ++ok;
        vals |= uint8_t(1u << v);
      }
    }
    if (ok >= ctx_.n_minus_f()) ph.vals = vals;
  }
  return ph.vals.has_value();
}

void Aba::progress(Step<Output> &st) {
  while (running_ && !halted_) {
    auto &rd = round(r_);
    if (!phase_step(r_, 0, st)) return;
    uint8_t prop = *rd.a.vals == 1 ? 0 : *rd.a.vals == 2 ? 1 : kBottom;
    bv_send(r_, 1, prop, st);
    if (!phase_step(r_, 1, st)) return;
    if (!rd.coin_started) start_coin(st);  // everyone runs the coin, needed or not

    auto vals = *rd.b.vals;
    bool has0 = vals & 1, has1 = vals & 2;
    if (has0 != has1) {
      bool x = has1;
      if (!(vals & 4) && !decided_) decide(x, st);
      est_ = x;
    } else {
      if (!rd.coin_out) return;
      est_ = *rd.coin_out;
    }
    if (halted_) return;
    ++r_;
    bv_send(r_, 0, est_, st);
  }
}

void Aba::start_coin(Step<Output> &st) {
  auto &rd = round(r_);
  rd.coin_started = true;
  if (coin_.kind == AbaCoin::Perfect) {
    Writer w;
    w.str("perfect-coin").bytes(coin_.perfect_seed).str(id_).u32(r_);
    rd.coin_out = (ctx_.S().hash(w.data()).back() & 1) != 0;
    return;
  }
  auto cid = child_id(id_, 'c', r_);
  rd.coin = std::make_unique<Coin>(ctx_, cid, coin_.coin);
  auto s = rd.coin->start();
  st.absorb(s);
  if (s.output) rd.coin_out = s.output->bit;
  auto it = held_.find(cid);
  if (it == held_.end()) return;
  auto envs = std::move(it->second);
  held_.erase(it);
  for (const auto &e : envs) {
    auto s2 = rd.coin->handle(e);
    st.absorb(s2);
    if (s2.output && !rd.coin_out) rd.coin_out = s2.output->bit;
  }
}

void Aba::decide(bool b, Step<Output> &st) {
  decided_ = AbaOutput{b, r_ + 1};
  st.output = *decided_;
  if (!term_sent_) {
    term_sent_ = true;
    st.multicast(ctx_.n, id_, Tag::Term, Bytes{uint8_t(b)});
  }
}

}  // namespace asyncbft::protocol
