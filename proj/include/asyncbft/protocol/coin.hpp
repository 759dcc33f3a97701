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

#include "asyncbft/protocol/avss.hpp"
#include "asyncbft/protocol/seeding.hpp"

namespace asyncbft::protocol {

enum class CoinMode { Genesis, Seeding };

struct CoinConfig {
  CoinMode mode = CoinMode::Genesis;
  Bytes genesis_nonce;  // required iff mode = Genesis
  AvssConfig avss;
};

/// A dealer's VRF evaluation as carried in Candidates and RBC inputs.
struct VrfTriple {
  PartyId dealer = 0;
  Bytes r;
  Bytes proof;
};
Bytes encode_triple(const VrfTriple &t);
VrfTriple decode_triple(ByteSpan data);
/// Total order on evaluations: larger r wins, ties go to the lower dealer.
bool triple_less(const VrfTriple &a, const VrfTriple &b);

struct CoinOutput {
  bool bit = false;
  VrfTriple max;  // rnd_max, for the election variant
};
/// bit byte followed by the winning triple.
Bytes encode_coin_output(const CoinOutput &o);

/// Hash of a sorted index set, as signed in Lock/Confirm.
Bytes index_set_hash(const crypto::Suite &S, const std::vector<PartyId> &set);

/// The reasonably fair common coin. Children are namespaced under the coin
/// id: seeding "<id>/s<j>", sharing "<id>/a<j>", reconstruction "<id>/r<j>".
class Coin {
 public:
  using Output = CoinOutput;

  Coin(Context ctx, std::string instance, CoinConfig cfg);

  Step<Output> start();
  Step<Output> handle(const Envelope &env);

  const std::string &instance() const { return id_; }
  /// seed_j once known.
  const std::optional<Bytes> &seed(PartyId j) const { return seeds_.at(j); }
  const std::set<PartyId> &completed() const { return s_; }
  const std::optional<std::set<PartyId>> &reconstruction_set() const { return s_hat_; }
  bool output_deferred() const { return deferred_; }

 private:
  struct Candidate {
    PartyId from;
    VrfTriple t;
  };

  void on_seed(PartyId j, Bytes seed, Step<Output> &st);
  void on_sh(PartyId j, AvssShOutput out, Step<Output> &st);
  void on_rec(PartyId k, const Bytes &m, Step<Output> &st);
  void step_child(const Envelope &env, Step<Output> &st);
  void replay(const std::string &child, Step<Output> &st);
  void try_locks(Step<Output> &st);
  void try_rec(PartyId k, Step<Output> &st);
  void try_candidate(Step<Output> &st);
  void take_candidate(const Candidate &c, Step<Output> &st);
  void try_output(Step<Output> &st);

  Context ctx_;
  std::string id_;
  CoinConfig cfg_;

  std::vector<std::optional<Bytes>> seeds_;  // index j, 0 unused
  std::map<PartyId, std::unique_ptr<Seeding>> seeding_;
  std::map<PartyId, std::unique_ptr<AvssSh>> sh_;
  std::map<PartyId, AvssShOutput> sh_out_;
  std::map<PartyId, std::unique_ptr<AvssRec>> rec_;
  std::map<PartyId, std::optional<crypto::VrfOutput>> rec_out_;
  std::map<std::string, std::vector<Envelope>> held_;

  std::set<PartyId> s_;
  std::optional<std::vector<PartyId>> s_tilde_;
  Bytes s_tilde_h_;
  SigSet sigma_;
  std::set<PartyId> confirm_from_, lock_from_, commit_from_;
  bool commit_sent_ = false;
  std::vector<std::pair<PartyId, std::vector<PartyId>>> pending_locks_;
  std::optional<std::set<PartyId>> s_hat_;
  std::set<PartyId> rec_requested_;

  bool candidate_sent_ = false;
  std::set<PartyId> cand_from_;
  std::vector<Candidate> pending_cands_;
  std::map<PartyId, VrfTriple> c_;
  std::size_t x_ = 0;
  bool done_ = false, deferred_ = false;
};

}  // namespace asyncbft::protocol
