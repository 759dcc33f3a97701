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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "asyncbft/sim/message.hpp"

namespace asyncbft::sim {

/// What the adversary may observe about a pending envelope. Channels between
/// honest parties are private, so their payloads are withheld.
struct PendingView {
  uint64_t seq = 0;
  PartyId from = 0;
  PartyId to = 0;
  Tag tag{};
  std::string_view instance;
  std::size_t length = 0;
  bool honest_pair = false;
  const Bytes *payload = nullptr;  // null when honest_pair
};

class PendingSet {
 public:
  virtual ~PendingSet() = default;
  virtual std::size_t size() const = 0;
  virtual PendingView at(std::size_t i) const = 0;
  /// Position of the oldest pending envelope.
  virtual std::size_t oldest() const = 0;
};

struct Decision {
  enum Kind { Deliver, Drop } kind = Deliver;
  std::size_t index = 0;
};

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual Decision next(const PendingSet &pending, Rng &rng) = 0;
  virtual std::string describe() const = 0;
};

using Predicate = std::function<bool(const PendingView &)>;
using ScriptFn = std::function<Decision(const PendingSet &, Rng &)>;

std::unique_ptr<Scheduler> make_fifo();
std::unique_ptr<Scheduler> make_random();
/// Envelopes matching `target` are delivered only when nothing else is
/// pending (subject to the network's fairness cap).
std::unique_ptr<Scheduler> make_delay_targets(Predicate target, std::string label);
std::unique_ptr<Scheduler> make_scripted(ScriptFn fn, std::string label);

/// Everything touching `party`: sent by or addressed to it.
Predicate touches_party(PartyId party);
/// Everything within an instance subtree.
Predicate under_instance(std::string prefix);

}  // namespace asyncbft::sim
