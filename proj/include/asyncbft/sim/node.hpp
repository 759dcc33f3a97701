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

#include <optional>
#include <utility>
#include <vector>

#include "asyncbft/sim/message.hpp"

namespace asyncbft::sim {

class Outbox {
 public:
  void send(Message m) { msgs_.push_back(std::move(m)); }
  void send_all(std::vector<Message> ms) {
    for (auto &m : ms) msgs_.push_back(std::move(m));
  }
  std::vector<Message> take() { return std::exchange(msgs_, {}); }

 private:
  std::vector<Message> msgs_;
};

/// One party as seen by the network. Honest parties wrap a protocol reactor;
/// corrupted parties are arbitrary implementations of this interface.
class Node {
 public:
  virtual ~Node() = default;
  virtual void start(Outbox &out) = 0;
  virtual void receive(const Envelope &env, Outbox &out) = 0;
  /// Canonical encoding of the protocol output, once produced.
  virtual std::optional<Bytes> output() const = 0;
};

/// Multicast helper: n copies, including one to the sender itself.
std::vector<Message> to_all(uint32_t n, const std::string &instance, Tag tag, const Bytes &payload);

}  // namespace asyncbft::sim
