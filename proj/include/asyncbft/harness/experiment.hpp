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
#include <optional>
#include <string>
#include <vector>

#include "asyncbft/sim/network.hpp"

namespace asyncbft::harness {

enum class Protocol { Avss, Seeding, Rbc, Coin, Aba, Election };
std::string_view protocol_name(Protocol p);
/// ParameterError naming the field on unknown names.
Protocol parse_protocol(std::string_view name);

/// One experiment: a protocol swept over n with a fixed scheduler/adversary.
///
/// Adversaries by protocol (the corrupted parties are the last f unless noted):
///   avss      none | crash-after-keyshare | short-quorum | equivocate-cipher |
///             split-commitment | bad-shares | partial-cipher             (corrupt dealer)
///   rbc       none | equivocate (corrupt sender) | silent
///   seeding   none | equivocate (corrupt leader) | silent | silent-leader
///   coin      none | silent | starve
///   aba       none | silent | contradict | starve
///   election  none | silent | forge | starve
/// "starve" replaces the scheduler with the coin starving strategy.
struct ExperimentConfig {
  Protocol protocol = Protocol::Coin;
  std::vector<uint32_t> n{4};
  std::optional<uint32_t> f;  // default floor((n-1)/3)
  std::string crypto = "mock";         // mock | real
  std::string coin_mode = "genesis";   // genesis | seeding
  std::string aba_coin = "protocol";   // protocol | perfect
  std::string scheduler = "random";    // random | fifo
  std::string adversary = "none";
  std::string inputs = "mixed";        // aba: mixed | zero | one | split
  uint32_t trials = 100;
  uint64_t seed = 1;
  uint32_t threads = 0;  // 0: hardware concurrency
  uint64_t step_cap = 10'000'000;

  uint32_t f_for(uint32_t n) const;
  /// ParameterError("<field>: ...") on the first invalid field.
  void validate() const;
};

std::string config_to_json(const ExperimentConfig &c);
/// Accepts a subset of keys; unknown keys and bad types are ParameterErrors.
ExperimentConfig config_from_json(std::string_view json, ExperimentConfig base = {});

struct TrialResult {
  uint32_t n = 0, f = 0, trial = 0;
  uint64_t seed = 0;
  bool terminated = false;  // every honest party produced output
  bool agreed = false;      // honest outputs form a singleton
  std::vector<std::string> violations;
  uint64_t messages = 0, bits = 0;
  uint32_t rounds = 0;
  // protocol specific
  std::optional<bool> bit;         // coin: the common bit
  std::optional<PartyId> index;    // election: the agreed index
  bool non_default = false;        // election: inner agreement decided 1
  std::optional<double> aba_rounds;  // aba: mean decided round over honest parties
  uint32_t sh_rounds = 0, rec_rounds = 0;  // avss phases
  uint32_t min_candidates = 0;     // coin: smallest |C| at an honest output
};

uint64_t trial_seed(const ExperimentConfig &c, uint32_t n, uint32_t trial);

/// Runs one trial. With `transcript`, the run is recorded and its header
/// carries everything replay needs.
TrialResult run_trial(const ExperimentConfig &c, uint32_t n, uint32_t trial, sim::Transcript *transcript = nullptr);

struct SummaryRow {
  std::string protocol, adversary, scheduler;
  uint32_t n = 0, f = 0, trials = 0;
  double termination_rate = 0, agreement_rate = 0;
  uint32_t violation_trials = 0;
  std::string first_violation;
  double mean_messages = 0, mean_bits = 0, mean_rounds = 0;
  uint64_t max_messages = 0, max_bits = 0;
  uint32_t max_rounds = 0;
  // coin
  std::optional<double> common_rate, one_rate;
  uint32_t min_candidates = 0;
  // election
  std::vector<uint64_t> index_hist;
  std::optional<double> non_default_rate;
  // aba
  std::optional<double> aba_mean_rounds;
  // avss
  uint32_t max_sh_rounds = 0, max_rec_rounds = 0;
};

std::string row_to_json(const SummaryRow &r);
SummaryRow row_from_json(std::string_view line);
std::string render_table(const std::vector<SummaryRow> &rows);

struct ExperimentResult {
  std::vector<SummaryRow> rows;
  std::vector<TrialResult> trials;  // all n, in (n, trial) order
};
/// Deterministic in the master seed regardless of thread count.
ExperimentResult run_experiment(const ExperimentConfig &c);
SummaryRow summarize(const ExperimentConfig &c, uint32_t n, const std::vector<TrialResult> &trials);

/// Metric by name ("messages", "bits", "rounds") from a row's mean.
double row_metric(const SummaryRow &r, std::string_view metric);

struct ReplayReport {
  std::vector<std::string> divergence;  // empty when identical
  sim::RunMetrics metrics;
};
ReplayReport replay(const sim::Transcript &t);

/// Runs `fn(i)` for i in [0, count) over `threads` workers.
void parallel_for(uint32_t count, uint32_t threads, const std::function<void(uint32_t)> &fn);

}  // namespace asyncbft::harness
