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

#include <set>
#include <string>
#include <vector>

#include "asyncbft/protocol/world.hpp"
#include "asyncbft/sim/scheduler.hpp"

namespace asyncbft::protocol {

/// Scripted Byzantine AVSS dealers. Each wraps an honest dealer and rewrites
/// what it sends.
enum class AvssAttack {
  CrashAfterKeyShare,  // sends KeyShares, then nothing
  ShortQuorum,         // Cipher carries only n-f-1 signatures
  EquivocateCipher,    // (h, c) to some parties, (h, c') to the rest; wrong Key in Rec
  SplitCommitment,     // even parties get shares of a second, unrelated sharing
  BadShares,           // one party's KeyShare does not open the commitment
  PartialCipher,       // Cipher only reaches f+1 parties
};
const std::vector<AvssAttack> &all_avss_attacks();
std::string_view attack_name(AvssAttack a);
TamperFn avss_dealer_tamper(AvssAttack a, const World &w, PartyId dealer, const std::string &instance);

/// RBC sender that sends v to odd parties and v' to even ones.
TamperFn rbc_equivocate(Bytes other);

/// Seeding leader that builds two different aggregates and locks each with
/// half of the parties, then pushes whichever gathers a quorum.
std::unique_ptr<sim::Node> make_equivocating_leader(const World &w, PartyId leader, const std::string &instance,
                                                    uint64_t seed);

/// ABA party that sends both bits in every Val and randomizes its Aux, Conf
/// and Term values per recipient.
TamperFn aba_contradict();

/// Coin starving attack: the last f parties are corrupt and the AVSS Ready
/// messages of `dealer`'s sharing never reach the victims until the network
/// forces them. The dealer's evaluation then enters some reconstruction sets
/// but not others, and corrupt parties send ⊥ Candidates to the victims so
/// they tally without it.
struct StarvePlan {
  PartyId dealer = 1;
  std::set<PartyId> victims;  // f+1 honest parties other than the dealer
  std::set<PartyId> corrupt;
};
StarvePlan starve_plan(uint32_t n, uint32_t f);
/// Delays Readys of the dealer's sharing towards the victims. Matched on the
/// "/a<dealer>" suffix, so every coin in a run is hit (ABA rounds included).
sim::Predicate starve_sharing(const StarvePlan &plan);
/// Rewrites Candidates (coin) to the victims as ⊥.
TamperFn bottom_candidates(std::set<PartyId> victims);

/// Election party that forges Votes. It harvests the (sender, triple) pairs
/// it relays as RBC echoes and, for every (dealer, r) seen at least f+1
/// times, multicasts a Vote built so that pair wins: its copies plus smaller
/// fillers. It also sends Votes whose entries claim its own triple under
/// other senders' names, and runs its agreement through aba_contradict.
TamperFn election_forgery(std::string election_id, PartyId me, uint32_t n, uint32_t f);

}  // namespace asyncbft::protocol
