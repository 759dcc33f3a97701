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

#include "asyncbft/sim/network.hpp"

#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace asyncbft::sim {

// Swap-remove vector of envelopes plus a lazy min-heap over seq for FIFO and
// the fairness cap.
class Network::Pending final : public PendingSet {
 public:
  explicit Pending(const Network &net) : net_{net} {}

  std::size_t size() const override { return items_.size(); }
  PendingView at(std::size_t i) const override {
    const auto &it = items_.at(i);
    const auto &e = it.env;
    PendingView v;
    v.seq = e.seq;
    v.from = e.from;
    v.to = e.to;
    v.tag = e.tag;
    v.instance = e.instance;
    v.length = e.payload.size();
    v.honest_pair = it.honest_pair;
    v.payload = it.honest_pair ? nullptr : &e.payload;
    return v;
  }
  std::size_t oldest() const override {
    prune();
    return pos_.at(heap_.top().seq);
  }

  void push(Envelope e, uint64_t deliveries) {
    bool hh = net_.is_honest(e.from) && net_.is_honest(e.to);
    auto seq = e.seq;
    heap_.push({seq, deliveries});
    pos_[seq] = items_.size();
    items_.push_back({std::move(e), hh});
  }

  Envelope take(std::size_t i) {
    auto item = std::move(items_.at(i));
    pos_.erase(item.env.seq);
    if (i + 1 != items_.size()) {
      items_[i] = std::move(items_.back());
      pos_[items_[i].env.seq] = i;
    }
    items_.pop_back();
    return std::move(item.env);
  }

  bool honest_pair(std::size_t i) const { return items_.at(i).honest_pair; }

  /// Index of an envelope overdue under the fairness cap, if any.
  std::optional<std::size_t> overdue(uint64_t deliveries, uint64_t cap) const {
    prune();
    if (heap_.empty()) return std::nullopt;
    if (deliveries - heap_.top().enqueued_at < cap) return std::nullopt;
    return pos_.at(heap_.top().seq);
  }

  std::map<std::string, std::size_t> by_instance() const {
    std::map<std::string, std::size_t> out;
    for (const auto &it : items_) out[it.env.instance]++;
    return out;
  }

 private:
  struct Item {
    Envelope env;
    bool honest_pair;
  };
  struct HeapEntry {
    uint64_t seq;
    uint64_t enqueued_at;
    bool operator>(const HeapEntry &o) const { return seq > o.seq; }
  };

  void prune() const {
    while (!heap_.empty() && !pos_.contains(heap_.top().seq)) heap_.pop();
  }

  const Network &net_;
  std::vector<Item> items_;
  std::unordered_map<uint64_t, std::size_t> pos_;
  mutable std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap_;
};

Network::Network(NetworkConfig cfg, std::vector<std::unique_ptr<Node>> nodes, std::unique_ptr<Scheduler> scheduler,
                 Rng rng)
    : cfg_{std::move(cfg)}, nodes_{std::move(nodes)}, scheduler_{std::move(scheduler)}, rng_{std::move(rng)} {
  if (cfg_.n < 3 * cfg_.f + 1) throw ParameterError("network requires n >= 3f+1");
  if (nodes_.size() != cfg_.n) throw ParameterError("network needs exactly n nodes");
  if (cfg_.corrupt.size() > cfg_.f) throw ParameterError("more than f corrupted parties");
  for (auto p : cfg_.corrupt) {
    if (p < 1 || p > cfg_.n) throw ParameterError("corrupted party out of range");
  }
  if (!scheduler_) throw ParameterError("network needs a scheduler");
}

RunResult Network::run() {
  Pending pending(*this);
  RunResult res;
  auto &m = res.metrics;
  Transcript tr;
  tr.config = cfg_.config_json;
  std::vector<std::optional<uint64_t>> sent_of;  // per delivery event
  uint64_t seq = 0, step = 0;

  auto enqueue = [&](PartyId from, uint64_t event, Outbox &out) {
    for (auto &msg : out.take()) {
      if (msg.to < 1 || msg.to > cfg_.n) continue;  // malformed address: nowhere to deliver
      Envelope e;
      e.seq = ++seq;
      e.sent_event = event;
      e.from = from;
      e.to = msg.to;
      e.instance = std::move(msg.instance);
      e.tag = msg.tag;
      e.payload = std::move(msg.payload);
      if (is_honest(from) && is_honest(e.to)) {
        auto bits = 8 * uint64_t(e.wire_bytes());
        m.messages++;
        m.bits += bits;
        auto &c = m.per_instance[e.instance];
        c.messages++;
        c.bits += bits;
      }
      pending.push(std::move(e), step);
    }
  };

  for (PartyId p = 1; p <= cfg_.n; ++p) {
    Outbox out;
    nodes_[p - 1]->start(out);
    enqueue(p, 0, out);
  }

  while (pending.size() > 0) {
    if (step >= cfg_.step_cap) break;
    Decision d;
    if (auto forced = pending.overdue(step, cfg_.fairness_cap)) {
      d = {Decision::Deliver, *forced};
    } else {
      d = scheduler_->next(pending, rng_);
      if (d.index >= pending.size()) throw AdversaryViolation("scheduler picked a non-existent envelope");
    }
    if (d.kind == Decision::Drop) {
      if (pending.honest_pair(d.index)) throw AdversaryViolation("attempt to drop an honest-to-honest envelope");
      auto env = pending.take(d.index);
      m.dropped++;
      if (cfg_.record) tr.events.push_back({Event::Drop, step, std::move(env)});
      continue;
    }
    bool hh = pending.honest_pair(d.index);
    auto env = pending.take(d.index);
    ++step;
    sent_of.push_back(hh ? std::optional<uint64_t>(env.sent_event) : std::nullopt);
    Outbox out;
    nodes_[env.to - 1]->receive(env, out);
    auto to = env.to;
    if (cfg_.record) tr.events.push_back({Event::Deliver, step, std::move(env)});
    enqueue(to, step, out);
  }

  m.steps = step;
  m.rounds = assign_rounds(sent_of);
  res.quiescent = pending.size() == 0;
  if (!res.quiescent) {
    std::ostringstream os;
    os << "step cap " << cfg_.step_cap << " reached with " << pending.size() << " pending envelopes; stuck instances:";
    for (const auto &[inst, cnt] : pending.by_instance()) os << ' ' << inst << '(' << cnt << ')';
    res.liveness_report = os.str();
  }
  for (const auto &node : nodes_) res.outputs.push_back(node->output());
  if (cfg_.record) {
    tr.outputs = res.outputs;
    tr.metrics = m;
    res.transcript = std::move(tr);
  }
  return res;
}

uint32_t assign_rounds(const std::vector<std::optional<uint64_t>> &sent) {
  // 0-1 BFS over events 0..K. Edges: send(m) -> deliver(m) with weight 1 for
  // honest traffic, and event k+1 -> event k with weight 0.
  const std::size_t K = sent.size();
  constexpr auto inf = std::numeric_limits<uint64_t>::max();
  std::vector<std::vector<std::size_t>> out1(K + 1);
  for (std::size_t k = 1; k <= K; ++k) {
    if (sent[k - 1]) {
      if (*sent[k - 1] >= k) throw std::logic_error("envelope delivered before it was sent");
      out1[*sent[k - 1]].push_back(k);
    }
  }
  std::vector<uint64_t> dist(K + 1, inf);
  std::deque<std::size_t> dq;
  dist[0] = 0;
  dq.push_back(0);
  while (!dq.empty()) {
    auto u = dq.front();
    dq.pop_front();
    if (u >= 1 && dist[u] < dist[u - 1]) {
      dist[u - 1] = dist[u];
      dq.push_front(u - 1);
    }
    for (auto v : out1[u]) {
      if (dist[u] + 1 < dist[v]) {
        dist[v] = dist[u] + 1;
        dq.push_back(v);
      }
    }
  }
  uint64_t best = 0;
  for (std::size_t k = 1; k <= K; ++k) {
    if (sent[k - 1] && dist[*sent[k - 1]] != inf) best = std::max(best, dist[*sent[k - 1]] + 1);
  }
  return uint32_t(best);
}

uint32_t assign_rounds(const Transcript &t, const std::set<PartyId> &corrupt) {
  std::vector<std::optional<uint64_t>> sent;
  for (const auto &e : t.events) {
    if (e.kind != Event::Deliver) continue;
    bool hh = !corrupt.contains(e.env.from) && !corrupt.contains(e.env.to);
    sent.push_back(hh ? std::optional<uint64_t>(e.env.sent_event) : std::nullopt);
  }
  return assign_rounds(sent);
}

}  // namespace asyncbft::sim
