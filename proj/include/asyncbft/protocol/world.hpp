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

#include "asyncbft/protocol/reactor.hpp"

namespace asyncbft::protocol {

/// Key material and per-party contexts for one simulated run.
class World {
 public:
  World(crypto::SuitePtr suite, uint32_t n, uint32_t f, uint64_t seed);

  uint32_t n() const { return n_; }
  uint32_t f() const { return f_; }
  const crypto::SuitePtr &suite() const { return suite_; }
  crypto::KeyRing &ring() { return ring_; }
  Context context(PartyId p, Probe *probe = nullptr) const;
  /// Fresh deterministic stream for network scheduling.
  Rng network_rng() const { return root_.fork("network"); }
  Rng rng(std::string_view label) const { return root_.fork(label); }

 private:
  crypto::SuitePtr suite_;
  uint32_t n_, f_;
  Rng root_;
  crypto::KeyRing ring_;
};

template <class R>
std::unique_ptr<sim::Node> make_node(std::unique_ptr<R> r, std::function<Bytes(const typename R::Output &)> enc) {
  return std::make_unique<ReactorNode<R>>(std::move(r), std::move(enc));
}

// ---- corrupted parties ----------------------------------------------------------

class SilentNode final : public sim::Node {
 public:
  void start(sim::Outbox &) override {}
  void receive(const Envelope &, sim::Outbox &) override {}
  std::optional<Bytes> output() const override { return std::nullopt; }
};

/// Rewrites every outgoing message of an otherwise honest node: return zero
/// messages to suppress, several to equivocate.
using TamperFn = std::function<std::vector<Message>(Message, Rng &)>;

class TamperNode final : public sim::Node {
 public:
  TamperNode(std::unique_ptr<sim::Node> inner, TamperFn fn, Rng rng)
      : inner_{std::move(inner)}, fn_{std::move(fn)}, rng_{std::move(rng)} {}
  void start(sim::Outbox &out) override;
  void receive(const Envelope &env, sim::Outbox &out) override;
  std::optional<Bytes> output() const override { return inner_->output(); }

 private:
  void rewrite(sim::Outbox &tmp, sim::Outbox &out);
  std::unique_ptr<sim::Node> inner_;
  TamperFn fn_;
  Rng rng_;
};

/// Runs honestly for `deliveries` receive events, then goes silent.
class CrashNode final : public sim::Node {
 public:
  CrashNode(std::unique_ptr<sim::Node> inner, uint64_t deliveries) : inner_{std::move(inner)}, left_{deliveries} {}
  void start(sim::Outbox &out) override;
  void receive(const Envelope &env, sim::Outbox &out) override;
  std::optional<Bytes> output() const override { return std::nullopt; }

 private:
  std::unique_ptr<sim::Node> inner_;
  uint64_t left_;
};

}  // namespace asyncbft::protocol
