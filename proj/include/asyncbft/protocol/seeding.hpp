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

#include "asyncbft/protocol/reactor.hpp"
#include "asyncbft/pvss.hpp"

namespace asyncbft::protocol {

/// Led reliable seeding: the leader aggregates 2f+1 scripts, gets the
/// aggregate signed by a quorum, collects 2f+1 decrypted shares and
/// publishes the secret, which is then spread with Echo/Ready amplification.
/// The seed derived from a reconstructed secret.
Bytes seed_from_secret(const crypto::Suite &S, const crypto::Point &secret);

class Seeding {
 public:
  using Output = Bytes;  // the seed

  Seeding(Context ctx, std::string instance, PartyId leader);

  Step<Bytes> start();
  Step<Bytes> handle(const Envelope &env);

  const std::string &instance() const { return id_; }
  PartyId leader() const { return leader_; }
  /// Committing/revealing phase marker: set once a valid Commit was accepted.
  bool revealing() const { return revealing_; }

 private:
  void leader_step(const Envelope &env, Step<Bytes> &st);
  void on_lock(const Envelope &env, Step<Bytes> &st);
  void on_commit(const Envelope &env, Step<Bytes> &st);
  void on_seed(const Envelope &env, Step<Bytes> &st);
  void on_amplify(const Envelope &env, Step<Bytes> &st);

  Context ctx_;
  std::string id_;
  PartyId leader_;
  pvss::Params params_;

  // leader
  std::map<PartyId, pvss::Script> k_;
  std::optional<pvss::Script> agg_;
  Bytes agg_h_;
  SigSet sigma_;
  std::set<PartyId> confirm_from_, share_from_;
  std::vector<pvss::Share> shares_;
  bool locked_ = false, committed_ = false, seeded_ = false;

  // participant
  std::optional<pvss::Script> pvss_;
  Bytes pvss_h_;
  bool got_lock_ = false, got_commit_ = false, got_seed_ = false, revealing_ = false;
  std::optional<Envelope> held_commit_, held_seed_;
  bool echoed_ = false, readied_ = false, done_ = false;
  std::map<Bytes, std::set<PartyId>> echo_, ready_;
  std::set<PartyId> echo_from_, ready_from_;
};

}  // namespace asyncbft::protocol
