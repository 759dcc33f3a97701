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

#include "asyncbft/protocol/world.hpp"
#include "asyncbft/sim/network.hpp"

namespace testing {

using namespace asyncbft;
using NodeFactory = std::function<std::unique_ptr<sim::Node>(protocol::World &, PartyId)>;

struct LiveRun {
  std::unique_ptr<sim::Network> net;  // keeps the nodes alive for inspection
  sim::RunResult result;
};

inline LiveRun run_live(protocol::World &w, const NodeFactory &make, std::set<PartyId> corrupt,
                        std::unique_ptr<sim::Scheduler> sched, uint64_t seed) {
  std::vector<std::unique_ptr<sim::Node>> nodes;
  for (PartyId p = 1; p <= w.n(); ++p) nodes.push_back(make(w, p));
  sim::NetworkConfig cfg{w.n(), w.f(), std::move(corrupt)};
  LiveRun out;
  out.net = std::make_unique<sim::Network>(cfg, std::move(nodes), std::move(sched), Rng(seed));
  out.result = out.net->run();
  return out;
}

inline sim::RunResult run_world(protocol::World &w, const NodeFactory &make, std::set<PartyId> corrupt,
                                std::unique_ptr<sim::Scheduler> sched, uint64_t seed, bool record = false) {
  std::vector<std::unique_ptr<sim::Node>> nodes;
  for (PartyId p = 1; p <= w.n(); ++p) nodes.push_back(make(w, p));
  sim::NetworkConfig cfg{w.n(), w.f(), std::move(corrupt)};
  cfg.record = record;
  sim::Network net(cfg, std::move(nodes), std::move(sched), Rng(seed));
  return net.run();
}

inline std::set<Bytes> honest_outputs(const sim::RunResult &r, const std::set<PartyId> &corrupt, std::size_t *count = nullptr) {
  std::set<Bytes> out;
  std::size_t c = 0;
  for (PartyId p = 1; p <= r.outputs.size(); ++p) {
    if (corrupt.contains(p) || !r.outputs[p - 1]) continue;
    out.insert(*r.outputs[p - 1]);
    ++c;
  }
  if (count) *count = c;
  return out;
}

}  // namespace testing
