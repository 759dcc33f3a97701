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

#include "asyncbft/sim/scheduler.hpp"

#include "asyncbft/sim/node.hpp"

namespace asyncbft::sim {

std::vector<Message> to_all(uint32_t n, const std::string &instance, Tag tag, const Bytes &payload) {
  std::vector<Message> out;
  out.reserve(n);
  for (PartyId j = 1; j <= n; ++j) out.push_back({j, instance, tag, payload});
  return out;
}

namespace {

class Fifo final : public Scheduler {
 public:
  Decision next(const PendingSet &p, Rng &) override { return {Decision::Deliver, p.oldest()}; }
  std::string describe() const override { return "fifo"; }
};

class Random final : public Scheduler {
 public:
  Decision next(const PendingSet &p, Rng &rng) override { return {Decision::Deliver, std::size_t(rng.uniform(p.size()))}; }
  std::string describe() const override { return "random"; }
};

class DelayTargets final : public Scheduler {
 public:
  DelayTargets(Predicate target, std::string label) : target_{std::move(target)}, label_{std::move(label)} {}

  Decision next(const PendingSet &p, Rng &rng) override {
    // Rejection sampling first; fall back to a scan when targets dominate.
    for (int tries = 0; tries < 16; ++tries) {
      auto i = std::size_t(rng.uniform(p.size()));
      if (!target_(p.at(i))) return {Decision::Deliver, i};
    }
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!target_(p.at(i))) others.push_back(i);
    }
    if (!others.empty()) return {Decision::Deliver, others[rng.uniform(others.size())]};
    return {Decision::Deliver, std::size_t(rng.uniform(p.size()))};
  }
  std::string describe() const override { return "delay-targets(" + label_ + ")"; }

 private:
  Predicate target_;
  std::string label_;
};

class Scripted final : public Scheduler {
 public:
  Scripted(ScriptFn fn, std::string label) : fn_{std::move(fn)}, label_{std::move(label)} {}
  Decision next(const PendingSet &p, Rng &rng) override { return fn_(p, rng); }
  std::string describe() const override { return "scripted(" + label_ + ")"; }

 private:
  ScriptFn fn_;
  std::string label_;
};

}  // namespace

std::unique_ptr<Scheduler> make_fifo() { return std::make_unique<Fifo>(); }
std::unique_ptr<Scheduler> make_random() { return std::make_unique<Random>(); }
std::unique_ptr<Scheduler> make_delay_targets(Predicate target, std::string label) {
  return std::make_unique<DelayTargets>(std::move(target), std::move(label));
}
std::unique_ptr<Scheduler> make_scripted(ScriptFn fn, std::string label) {
  return std::make_unique<Scripted>(std::move(fn), std::move(label));
}

Predicate touches_party(PartyId party) {
  return [party](const PendingView &v) { return v.from == party || v.to == party; };
}

Predicate under_instance(std::string prefix) {
  return [prefix = std::move(prefix)](const PendingView &v) { return within(v.instance, prefix); };
}

}  // namespace asyncbft::sim
