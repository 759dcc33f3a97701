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
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asyncbft/crypto/keys.hpp"
#include "asyncbft/sim/node.hpp"

namespace asyncbft::protocol {

using sim::Envelope;
using sim::Message;
using sim::Tag;

/// Hooks for instrumented assertions. The simulator is single-threaded, so a
/// probe sees a consistent global snapshot at every call.
class Probe {
 public:
  virtual ~Probe() = default;
  /// Coin: party's completed-sharing set S changed.
  virtual void coin_set(PartyId, const std::string & /*instance*/, const std::set<PartyId> &) {}
  /// Coin: party signed a Lock for this set (the hash it signed).
  virtual void coin_lock_signed(PartyId, const std::string &, const Bytes & /*hash*/, const std::vector<PartyId> &) {}
  /// Coin: party accepted a Commit over `hash` and fixed its reconstruction set.
  virtual void coin_commit_accepted(PartyId, const std::string &, const Bytes & /*hash*/) {}
  /// Coin: party output with |C| valid candidates and X bottoms.
  virtual void coin_output(PartyId, const std::string &, std::size_t /*c*/, std::size_t /*x*/) {}
  /// Free-form event worth flagging in reports.
  virtual void note(PartyId, const std::string &, std::string_view) {}
};

/// Everything a reactor needs to know about the party it runs for.
struct Context {
  crypto::SuitePtr suite;
  std::shared_ptr<const crypto::KeyDirectory> dir;
  std::shared_ptr<const crypto::PartyKeys> keys;
  PartyId me = 0;
  uint32_t n = 0;
  uint32_t f = 0;
  Rng rng{0};
  Probe *probe = nullptr;

  const crypto::Suite &S() const { return *suite; }
  uint32_t quorum() const { return 2 * f + 1; }
  uint32_t n_minus_f() const { return n - f; }
  Rng rng_for(std::string_view instance) const { return rng.fork(instance); }
  Bytes sign(std::string_view instance, ByteSpan msg) const { return crypto::sign(*suite, *keys, instance, msg); }
  /// False for unknown parties instead of throwing: payloads are untrusted.
  bool verify(PartyId p, std::string_view instance, ByteSpan msg, ByteSpan sig) const {
    return dir->contains(p) && dir->verify_sig(p, instance, msg, sig);
  }
  bool valid_party(PartyId p) const { return p >= 1 && p <= n; }
};

template <class Out>
struct Step {
  std::vector<Message> out;
  std::optional<Out> output;

  void send(PartyId to, const std::string &instance, Tag tag, Bytes payload) {
    out.push_back({to, instance, tag, std::move(payload)});
  }
  void multicast(uint32_t n, const std::string &instance, Tag tag, const Bytes &payload) {
    for (PartyId j = 1; j <= n; ++j) out.push_back({j, instance, tag, payload});
  }
  template <class T>
  void absorb(Step<T> &other) {
    for (auto &m : other.out) out.push_back(std::move(m));
    other.out.clear();
  }
};

std::string child_id(const std::string &parent, char kind, uint32_t index);
std::string child_id(const std::string &parent, char kind);

/// Signature sets (Σ, Π): party index plus signature.
using SigSet = std::vector<std::pair<PartyId, Bytes>>;
void write_sigset(Writer &w, const SigSet &s);
SigSet read_sigset(Reader &r, uint32_t n);
/// Exactly `need` distinct, known signers, each valid over msg.
bool check_sigset(const Context &ctx, const std::string &instance, const SigSet &s, ByteSpan msg, uint32_t need);

/// Adapts a reactor to the network's Node interface.
template <class R>
class ReactorNode final : public sim::Node {
 public:
  using Encoder = std::function<Bytes(const typename R::Output &)>;
  ReactorNode(std::unique_ptr<R> r, Encoder enc) : r_{std::move(r)}, enc_{std::move(enc)} {}

  void start(sim::Outbox &out) override { take(r_->start(), out); }
  void receive(const Envelope &env, sim::Outbox &out) override { take(r_->handle(env), out); }
  std::optional<Bytes> output() const override { return out_; }
  R &reactor() { return *r_; }

 private:
  void take(Step<typename R::Output> st, sim::Outbox &out) {
    out.send_all(std::move(st.out));
    if (st.output && !out_) out_ = enc_(*st.output);
  }

  std::unique_ptr<R> r_;
  Encoder enc_;
  std::optional<Bytes> out_;
};

}  // namespace asyncbft::protocol
