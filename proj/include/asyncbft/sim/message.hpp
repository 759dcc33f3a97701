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

#include <string>
#include <string_view>

#include "asyncbft/bytes.hpp"
#include "asyncbft/crypto/keys.hpp"

namespace asyncbft::sim {

enum class Tag : uint8_t {
  // reliable broadcast
  RbcSend = 1,
  RbcEcho,
  RbcReady,
  // AVSS
  KeyShare,
  Stored,
  Cipher,
  AvssEcho,
  AvssReady,
  KeyRec,
  Key,
  // seeding
  PvssScript,
  LockAggPvss,
  ConfirmAggPvss,
  CommitAggPvss,
  SeedShare,
  Seed,
  SeedEcho,
  SeedReady,
  // coin
  Lock,
  Confirm,
  Commit,
  RecRequest,
  Candidate,
  // binary agreement
  Val,
  Aux,
  Conf,
  Term,
  // election
  Vote,
};

constexpr uint8_t kMaxTag = uint8_t(Tag::Vote);

std::string_view tag_name(Tag t);
bool valid_tag(uint8_t raw);

/// Outgoing message as produced by a reactor. The sender is implicit.
struct Message {
  PartyId to = 0;
  std::string instance;
  Tag tag{};
  Bytes payload;
};

/// A message in flight.
struct Envelope {
  uint64_t seq = 0;         // global send order
  uint64_t sent_event = 0;  // event that emitted it; 0 is the start event
  PartyId from = 0;
  PartyId to = 0;
  std::string instance;
  Tag tag{};
  Bytes payload;

  /// Modelled wire header: from(2) to(2) tag(1) instance length(4).
  std::size_t header_bytes() const { return 2 + 2 + 1 + instance.size() + 4; }
  std::size_t wire_bytes() const { return header_bytes() + payload.size(); }
};

/// True if `instance` equals `prefix` or lies below it ("prefix/...").
bool within(std::string_view instance, std::string_view prefix);

}  // namespace asyncbft::sim
