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

namespace asyncbft::protocol {

/// Bracha broadcast. Echo carries the value, Ready only its hash; a party
/// delivers once it holds 2f+1 Readys for a hash and has seen the value.
class Rbc {
 public:
  using Output = Bytes;

  Rbc(Context ctx, std::string instance, PartyId sender, std::optional<Bytes> input = std::nullopt);

  Step<Bytes> start();
  /// Supplies the sender's value after construction (election inputs arrive late).
  Step<Bytes> input(Bytes value);
  Step<Bytes> handle(const Envelope &env);

  const std::string &instance() const { return id_; }
  bool delivered() const { return done_; }

 private:
  struct Tally {
    std::set<PartyId> echo, ready;
  };
  void maybe_progress(const Bytes &h, Step<Bytes> &st);

  Context ctx_;
  std::string id_;
  PartyId sender_;
  std::optional<Bytes> input_;
  bool started_ = false, sent_ = false, got_send_ = false, echoed_ = false, readied_ = false, done_ = false;
  std::map<Bytes, Tally> tally_;
  std::map<Bytes, Bytes> values_;  // hash -> value
  std::set<PartyId> echo_from_, ready_from_;
};

}  // namespace asyncbft::protocol
