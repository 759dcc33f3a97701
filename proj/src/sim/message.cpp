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

#include "asyncbft/sim/message.hpp"

namespace asyncbft::sim {

std::string_view tag_name(Tag t) {
  switch (t) {
    case Tag::RbcSend: return "RbcSend";
    case Tag::RbcEcho: return "RbcEcho";
    case Tag::RbcReady: return "RbcReady";
    case Tag::KeyShare: return "KeyShare";
    case Tag::Stored: return "Stored";
    case Tag::Cipher: return "Cipher";
    case Tag::AvssEcho: return "Echo";
    case Tag::AvssReady: return "Ready";
    case Tag::KeyRec: return "KeyRec";
    case Tag::Key: return "Key";
    case Tag::PvssScript: return "PvssScript";
    case Tag::LockAggPvss: return "LockAggPvss";
    case Tag::ConfirmAggPvss: return "ConfirmAggPvss";
    case Tag::CommitAggPvss: return "CommitAggPvss";
    case Tag::SeedShare: return "SeedShare";
    case Tag::Seed: return "Seed";
    case Tag::SeedEcho: return "SeedEcho";
    case Tag::SeedReady: return "SeedReady";
    case Tag::Lock: return "Lock";
    case Tag::Confirm: return "Confirm";
    case Tag::Commit: return "Commit";
    case Tag::RecRequest: return "RecRequest";
    case Tag::Candidate: return "Candidate";
    case Tag::Val: return "Val";
    case Tag::Aux: return "Aux";
    case Tag::Conf: return "Conf";
    case Tag::Term: return "Term";
    case Tag::Vote: return "Vote";
  }
  return "?";
}

bool valid_tag(uint8_t raw) { return raw >= 1 && raw <= kMaxTag; }

bool within(std::string_view instance, std::string_view prefix) {
  if (instance.size() < prefix.size() || instance.substr(0, prefix.size()) != prefix) return false;
  return instance.size() == prefix.size() || instance[prefix.size()] == '/';
}

}  // namespace asyncbft::sim
