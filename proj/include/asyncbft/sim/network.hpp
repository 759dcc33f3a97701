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

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "asyncbft/sim/node.hpp"
#include "asyncbft/sim/scheduler.hpp"
#include "asyncbft/sim/transcript.hpp"

namespace asyncbft::sim {

/// The scheduler tried to drop or alter traffic between honest parties.
class AdversaryViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct NetworkConfig {
  uint32_t n = 0;
  uint32_t f = 0;
  std::set<PartyId> corrupt;
  uint64_t step_cap = 10'000'000;
  uint64_t fairness_cap = 10'000;
  bool record = false;
  std::string config_json;  // copied into the transcript header
};

struct RunResult {
  std::vector<std::optional<Bytes>> outputs;  // index p-1, honest and corrupt alike
  RunMetrics metrics;
  std::optional<Transcript> transcript;
  bool quiescent = false;
  std::string liveness_report;  // set when the step cap was hit
};

/// Deterministic discrete-event network. Time is just the delivery order the
/// scheduler picks; the fairness cap forces delivery of any envelope that has
/// been passed over by `fairness_cap` later deliveries.
class Network {
 public:
  Network(NetworkConfig cfg, std::vector<std::unique_ptr<Node>> nodes, std::unique_ptr<Scheduler> scheduler, Rng rng);

  RunResult run();

  bool is_honest(PartyId p) const { return !cfg_.corrupt.contains(p); }
  Node &node(PartyId p) { return *nodes_.at(p - 1); }

 private:
  class Pending;

  NetworkConfig cfg_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::unique_ptr<Scheduler> scheduler_;
  Rng rng_;
};

/// Virtual rounds from the honest-to-honest deliveries of a run, given for
/// each delivery event k = 1..K the event that sent it (0 = start), or
/// nullopt when the envelope was not honest-to-honest.
///
/// Event distances are shortest paths from the start event where a delivery
/// is one round after its send, and an earlier delivery is never in a later
/// round than a subsequent one. A message's round is its sender event's
/// distance plus one; the running time is the largest round.
uint32_t assign_rounds(const std::vector<std::optional<uint64_t>> &sent_event_of_delivery);
/// Same, over a recorded transcript; throws std::logic_error if an envelope
/// is delivered before it was sent.
uint32_t assign_rounds(const Transcript &t, const std::set<PartyId> &corrupt);

}  // namespace asyncbft::sim
