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

#include "asyncbft/protocol/aba.hpp"
#include "asyncbft/protocol/rbc.hpp"

namespace asyncbft::protocol {

struct ElectionConfig {
  CoinConfig coin;
  /// Coin for the inner agreement; defaults to the protocol coin with `coin`'s settings.
  std::optional<AbaCoin> aba;
};

struct ElectionOutput {
  PartyId index = 1;
  bool default_path = true;  // agreement on 0, so the fallback index
  VrfTriple winner;          // empty on the default path
};
/// u32 index.
Bytes encode_election_output(const ElectionOutput &o);

/// (r as a big-endian integer mod n) + 1.
PartyId index_of(ByteSpan r, uint32_t n);

/// One entry of G: RBC sender j delivered triple t.
struct BallotEntry {
  PartyId from = 0;
  VrfTriple t;
  bool operator==(const BallotEntry &o) const {
    return from == o.from && t.dealer == o.t.dealer && t.r == o.t.r && t.proof == o.t.proof;
  }
};
Bytes encode_vote(const std::vector<BallotEntry> &g);
std::vector<BallotEntry> decode_vote(ByteSpan data, uint32_t n);
/// The (dealer, r) that is largest in g and appears at least f+1 times.
std::optional<VrfTriple> vote_winner(const std::vector<BallotEntry> &g, uint32_t f);

/// Leader election with perfect agreement. Children: coin "<id>/k", RBC of
/// each party's rnd_max at "<id>/b<j>", agreement on the ballot at "<id>/v".
class Election {
 public:
  using Output = ElectionOutput;

  Election(Context ctx, std::string instance, ElectionConfig cfg);

  Step<Output> start();
  Step<Output> handle(const Envelope &env);

  const std::string &instance() const { return id_; }
  const std::vector<BallotEntry> &g() const { return g_; }
  std::optional<bool> ballot() const { return ballot_; }
  /// The inner agreement's decision; true means the non-default path.
  std::optional<bool> agreed() const { return aba_out_; }
  const Coin &coin() const { return *coin_; }

 private:
  void on_coin(const CoinOutput &o, Step<Output> &st);
  void on_rbc(PartyId j, const Bytes &value, Step<Output> &st);
  void try_entries(Step<Output> &st);
  void start_aba(bool ballot, Step<Output> &st);
  void on_aba(bool bit, Step<Output> &st);
  void try_votes(Step<Output> &st);

  Context ctx_;
  std::string id_;
  ElectionConfig cfg_;
  std::unique_ptr<Coin> coin_;
  std::map<PartyId, std::unique_ptr<Rbc>> rbc_;
  std::unique_ptr<Aba> aba_;
  std::vector<Envelope> aba_held_;

  std::vector<std::pair<PartyId, VrfTriple>> unverified_;  // waiting for a seed
  std::vector<BallotEntry> g_;
  std::optional<bool> ballot_;
  std::optional<bool> aba_out_;
  std::vector<std::vector<BallotEntry>> votes_;  // well-formed Votes, in arrival order
  std::map<PartyId, uint32_t> vote_count_;
  bool done_ = false;
};

}  // namespace asyncbft::protocol
