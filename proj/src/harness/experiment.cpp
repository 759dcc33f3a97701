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

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <json.hpp>
#include <mutex>
#include <numeric>
#include <thread>

#include "asyncbft/harness/experiment.hpp"

namespace asyncbft::harness {

void parallel_for(uint32_t count, uint32_t threads, const std::function<void(uint32_t)> &fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max(count, 1u));
  if (threads <= 1) {
    for (uint32_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<uint32_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (uint32_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (uint32_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lk(mu);
          if (!err) err = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto &th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

SummaryRow summarize(const ExperimentConfig &c, uint32_t n, const std::vector<TrialResult> &trials) {
  SummaryRow r;
  r.protocol = std::string(protocol_name(c.protocol));
  r.adversary = c.adversary;
  r.scheduler = c.adversary == "starve" ? "starve" : c.scheduler;
  r.n = n;
  r.f = c.f_for(n);
  r.trials = uint32_t(trials.size());
  if (trials.empty()) return r;
  double T = double(trials.size());
  // Integer sums (and sorted addition for the one real-valued stat) keep the
  // row independent of trial order.
  uint64_t term = 0, agree = 0, common = 0, ones = 0, nondef = 0, msg = 0, bits = 0, rounds = 0;
  std::vector<double> aba;
  r.min_candidates = UINT32_MAX;
  if (c.protocol == Protocol::Election) r.index_hist.assign(n, 0);
  for (const auto &t : trials) {
    term += t.terminated;
    agree += t.agreed;
    if (!t.violations.empty()) {
      if (r.violation_trials++ == 0) r.first_violation = fmt::format("trial {}: {}", t.trial, t.violations.front());
    }
    msg += t.messages;
    bits += t.bits;
    rounds += t.rounds;
    r.max_messages = std::max(r.max_messages, t.messages);
    r.max_bits = std::max(r.max_bits, t.bits);
    r.max_rounds = std::max(r.max_rounds, t.rounds);
    if (t.bit) {
      ++common;
      ones += *t.bit;
    }
    if (t.min_candidates) r.min_candidates = std::min(r.min_candidates, t.min_candidates);
    if (t.index && *t.index >= 1 && *t.index <= n) ++r.index_hist[*t.index - 1];
    nondef += t.non_default;
    if (t.aba_rounds) aba.push_back(*t.aba_rounds);
    r.max_sh_rounds = std::max(r.max_sh_rounds, t.sh_rounds);
    r.max_rec_rounds = std::max(r.max_rec_rounds, t.rec_rounds);
  }
  if (r.min_candidates == UINT32_MAX) r.min_candidates = 0;
  r.mean_messages = double(msg) / T;
  r.mean_bits = double(bits) / T;
  r.mean_rounds = double(rounds) / T;
  r.termination_rate = double(term) / T;
  r.agreement_rate = double(agree) / T;
  if (c.protocol == Protocol::Coin) {
    r.common_rate = double(common) / T;
    r.one_rate = common ? double(ones) / double(common) : 0.0;
  }
  if (c.protocol == Protocol::Election) r.non_default_rate = double(nondef) / T;
  if (!aba.empty()) {
    std::sort(aba.begin(), aba.end());
    r.aba_mean_rounds = std::accumulate(aba.begin(), aba.end(), 0.0) / double(aba.size());
  }
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig &c) {
  c.validate();
  ExperimentResult res;
  for (auto n : c.n) {
    std::vector<TrialResult> trials(c.trials);
    parallel_for(c.trials, c.threads, [&](uint32_t i) { trials[i] = run_trial(c, n, i); });
    res.rows.push_back(summarize(c, n, trials));
    for (auto &t : trials) res.trials.push_back(std::move(t));
  }
  return res;
}

ReplayReport replay(const sim::Transcript &t) {
  nlohmann::json hdr;
  try {
    hdr = nlohmann::json::parse(t.config);
  } catch (const nlohmann::json::exception &e) {
    throw ParameterError(fmt::format("transcript header: {}", e.what()));
  }
  if (!hdr.contains("experiment") || !hdr.contains("n") || !hdr.contains("trial"))
    throw ParameterError("transcript header: missing experiment, n or trial");
  auto c = config_from_json(hdr["experiment"].dump());
  sim::Transcript again;
  run_trial(c, hdr["n"].get<uint32_t>(), hdr["trial"].get<uint32_t>(), &again);
  return {sim::diff_transcripts(t, again), again.metrics};
}

}  // namespace asyncbft::harness
