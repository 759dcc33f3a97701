#pragma once

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

#include <array>

#include "asyncbft/protocol/coin.hpp"

namespace asyncbft::protocol {

/// Coin used per ABA round: the real protocol, or a perfect shared coin
/// fixture H(seed, instance, r) for isolating the round logic.
struct AbaCoin {
  enum Kind { Protocol, Perfect } kind = Protocol;
  CoinConfig coin;
  Bytes perfect_seed;
};

struct AbaOutput {
  bool bit = false;
  uint32_t rounds = 0;  // coin rounds started when this party decided
};

/// Binary agreement with a coin that may disagree. Each round runs two
/// binary-value broadcasts:
///   A: Val(r, est), relayed at f+1 and admitted at 2f+1; then Aux(r, A, w)
///      until n-f Aux are covered. A singleton {x} proposes x, otherwise ⊥.
///   B: Conf(r, prop) over {0, 1, ⊥}, same relay/admit rule; then Aux(r, B, w).
/// {x} decides x, {x, ⊥} adopts x, {⊥} adopts the round's coin. Honest
/// proposals are never split between 0 and 1, so no decision depends on the
/// coin agreeing. A decided party multicasts Term; f+1 Terms decide, 2f+1
/// Terms halt.
class Aba {
 public:
  using Output = AbaOutput;

  Aba(Context ctx, std::string instance, AbaCoin coin, std::optional<bool> input = std::nullopt);

  Step<Output> start();
  Step<Output> input(bool b);
  Step<Output> handle(const Envelope &env);

  const std::string &instance() const { return id_; }
  uint32_t round() const { return r_; }
  bool halted() const { return halted_; }
  const std::optional<AbaOutput> &decided() const { return decided_; }

  static constexpr uint8_t kBottom = 2;

 private:
  // One binary-value broadcast plus its Aux stage. Values 0, 1, 2 (= ⊥).
  struct Phase {
    std::array<std::set<PartyId>, 3> from;
    std::array<bool, 3> sent{false, false, false};
    uint8_t bin = 0;  // bit v set once v is admitted
    int first = -1;
    bool aux_sent = false;
    std::map<PartyId, uint8_t> aux;  // sender -> value
    std::optional<uint8_t> vals;     // mask, once n-f covered Aux arrived
  };
  struct Round {
    Phase a, b;
    bool coin_started = false;
    std::unique_ptr<Coin> coin;
    std::optional<bool> coin_out;
  };

  Round &round(uint32_t r) { return rounds_[r]; }
  void bv_send(uint32_t r, int phase, uint8_t v, Step<Output> &st);
  bool phase_step(uint32_t r, int phase, Step<Output> &st);
  void progress(Step<Output> &st);
  void start_coin(Step<Output> &st);
  void decide(bool b, Step<Output> &st);

  Context ctx_;
  std::string id_;
  AbaCoin coin_;
  std::optional<bool> input_;
  bool started_ = false, running_ = false, halted_ = false, term_sent_ = false;
  uint32_t r_ = 0;
  bool est_ = false;
  std::map<uint32_t, Round> rounds_;
  std::map<std::string, std::vector<Envelope>> held_;
  std::optional<AbaOutput> decided_;
  std::array<std::set<PartyId>, 2> term_;
  std::set<PartyId> term_from_;
};

Bytes encode_aba_output(const AbaOutput &o);

}  // namespace asyncbft::protocol
