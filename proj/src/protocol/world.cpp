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

#include "asyncbft/protocol/world.hpp"

namespace asyncbft::protocol {

namespace {
crypto::KeyRing make_ring(const crypto::SuitePtr &suite, uint32_t n, const Rng &root) {
  auto rng = root.fork("keys");
  return crypto::KeyRing::generate(suite, n, rng);
}
}  // namespace

World::World(crypto::SuitePtr suite, uint32_t n, uint32_t f, uint64_t seed)
    : suite_{std::move(suite)}, n_{n}, f_{f}, root_{seed}, ring_{make_ring(suite_, n, root_)} {
  if (n_ < 3 * f_ + 1) throw ParameterError("need n >= 3f+1");
}

Context World::context(PartyId p, Probe *probe) const {
  Context c;
  c.suite = suite_;
  c.dir = ring_.directory();
  c.keys = std::make_shared<const crypto::PartyKeys>(ring_.secret(p));
  c.me = p;
  c.n = n_;
  c.f = f_;
  c.rng = root_.fork("party").fork(uint64_t(p));
  c.probe = probe;
  return c;
}

void TamperNode::rewrite(sim::Outbox &tmp, sim::Outbox &out) {
  for (auto &m : tmp.take())
    for (auto &r : fn_(std::move(m), rng_)) out.send(std::move(r));
}

void TamperNode::start(sim::Outbox &out) {
  sim::Outbox tmp;
  inner_->start(tmp);
  rewrite(tmp, out);
}

void TamperNode::receive(const Envelope &env, sim::Outbox &out) {
  sim::Outbox tmp;
  inner_->receive(env, tmp);
  rewrite(tmp, out);
}

void CrashNode::start(sim::Outbox &out) {
  if (left_ > 0) inner_->start(out);
}

void CrashNode::receive(const Envelope &env, sim::Outbox &out) {
  if (left_ == 0) return;
  --left_;
  inner_->receive(env, out);
}

}  // namespace asyncbft::protocol
