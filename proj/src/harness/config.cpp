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
#include <fmt/ranges.h>

#include <algorithm>
#include <json.hpp>

#include "asyncbft/harness/experiment.hpp"

namespace asyncbft::harness {

using nlohmann::json;

namespace {

constexpr std::pair<Protocol, std::string_view> kProtocols[] = {
    {Protocol::Avss, "avss"}, {Protocol::Seeding, "seeding"}, {Protocol::Rbc, "rbc"},
    {Protocol::Coin, "coin"}, {Protocol::Aba, "aba"},         {Protocol::Election, "election"},
};

const std::map<Protocol, std::vector<std::string>> &adversaries() {
  static const std::map<Protocol, std::vector<std::string>> m{
      {Protocol::Avss, {"none", "crash-after-keyshare", "short-quorum", "equivocate-cipher", "split-commitment", "bad-shares",
                         "partial-cipher"}},
      {Protocol::Rbc, {"none", "equivocate", "silent"}},
      {Protocol::Seeding, {"none", "equivocate", "silent", "silent-leader"}},
      {Protocol::Coin, {"none", "silent", "starve"}},
      {Protocol::Aba, {"none", "silent", "contradict", "starve"}},
      {Protocol::Election, {"none", "silent", "forge", "starve"}},
  };
  return m;
}

void one_of(std::string_view field, const std::string &v, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed)
    if (v == a) return;
  throw ParameterError(fmt::format("{}: '{}' is not one of {}", field, v, fmt::join(allowed, ", ")));
}

}  // namespace

std::string_view protocol_name(Protocol p) {
  for (auto [k, name] : kProtocols)
    if (k == p) return name;
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  for (auto [k, v] : kProtocols)
    if (v == name) return k;
  throw ParameterError(fmt::format("protocol: unknown protocol '{}'", name));
}

uint32_t ExperimentConfig::f_for(uint32_t nn) const { return f ? *f : (nn - 1) / 3; }

void ExperimentConfig::validate() const {
  if (n.empty()) throw ParameterError("n: at least one value needed");
  for (auto nn : n) {
    if (nn < 1 || nn > 64) throw ParameterError(fmt::format("n: {} out of range [1, 64]", nn));
    if (nn < 3 * f_for(nn) + 1) throw ParameterError(fmt::format("f: n = {} needs n >= 3f + 1", nn));
  }
  one_of("crypto", crypto, {"mock", "real"});
  one_of("coin_mode", coin_mode, {"genesis", "seeding"});
  one_of("aba_coin", aba_coin, {"protocol", "perfect"});
  one_of("scheduler", scheduler, {"random", "fifo"});
  one_of("inputs", inputs, {"mixed", "zero", "one", "split"});
  const auto &ok = adversaries().at(protocol);
  if (std::find(ok.begin(), ok.end(), adversary) == ok.end())
    throw ParameterError(fmt::format("adversary: '{}' is not valid for {} (one of {})", adversary,
                                     protocol_name(protocol), fmt::join(ok, ", ")));
  if (adversary != "none") {
    for (auto nn : n)
      if (f_for(nn) == 0) throw ParameterError(fmt::format("adversary: '{}' needs f >= 1 (n = {})", adversary, nn));
  }
  if (trials == 0) throw ParameterError("trials: must be positive");
  if (step_cap == 0) throw ParameterError("step_cap: must be positive");
}

std::string config_to_json(const ExperimentConfig &c) {
  json j{{"protocol", protocol_name(c.protocol)},
         {"n", c.n},
         {"crypto", c.crypto},
         {"coin_mode", c.coin_mode},
         {"aba_coin", c.aba_coin},
         {"scheduler", c.scheduler},
         {"adversary", c.adversary},
         {"inputs", c.inputs},
         {"trials", c.trials},
         {"seed", c.seed},
         {"step_cap", c.step_cap}};
  if (c.f) j["f"] = *c.f;
  // threads is deliberately left out: it never changes results.
  return j.dump();
}

ExperimentConfig config_from_json(std::string_view text, ExperimentConfig c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParameterError(fmt::format("config: not valid JSON ({})", e.what()));
  }
  if (!j.is_object()) throw ParameterError("config: expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto &k = it.key();
    const auto &v = it.value();
    try {
      if (k == "protocol")
        c.protocol = parse_protocol(v.get<std::string>());
      else if (k == "n")
        c.n = v.is_array() ? v.get<std::vector<uint32_t>>() : std::vector<uint32_t>{v.get<uint32_t>()};
      else if (k == "f")
        c.f = v.is_null() ? std::nullopt : std::optional<uint32_t>(v.get<uint32_t>());
      else if (k == "crypto")
        c.crypto = v.get<std::string>();
      else if (k == "coin_mode")
        c.coin_mode = v.get<std::string>();
      else if (k == "aba_coin")
        c.aba_coin = v.get<std::string>();
      else if (k == "scheduler")
        c.scheduler = v.get<std::string>();
      else if (k == "adversary")
        c.adversary = v.get<std::string>();
      else if (k == "inputs")
        c.inputs = v.get<std::string>();
      else if (k == "trials")
        c.trials = v.get<uint32_t>();
      else if (k == "seed")
        c.seed = v.get<uint64_t>();
      else if (k == "threads")
        c.threads = v.get<uint32_t>();
      else if (k == "step_cap")
        c.step_cap = v.get<uint64_t>();
      else
        throw ParameterError(fmt::format("{}: unknown config key", k));
    } catch (const json::exception &e) {
      throw ParameterError(fmt::format("{}: bad value ({})", k, e.what()));
    }
  }
  return c;
}

std::string row_to_json(const SummaryRow &r) {
  json j{{"protocol", r.protocol},
         {"adversary", r.adversary},
         {"scheduler", r.scheduler},
         {"n", r.n},
         {"f", r.f},
         {"trials", r.trials},
         {"termination_rate", r.termination_rate},
         {"agreement_rate", r.agreement_rate},
         {"violation_trials", r.violation_trials},
         {"mean_messages", r.mean_messages},
         {"max_messages", r.max_messages},
         {"mean_bits", r.mean_bits},
         {"max_bits", r.max_bits},
         {"mean_rounds", r.mean_rounds},
         {"max_rounds", r.max_rounds}};
  if (!r.first_violation.empty()) j["first_violation"] = r.first_violation;
  if (r.common_rate) {
    j["common_rate"] = *r.common_rate;
    j["min_candidates"] = r.min_candidates;
  }
  if (r.one_rate) j["one_rate"] = *r.one_rate;
  if (!r.index_hist.empty()) j["index_hist"] = r.index_hist;
  if (r.non_default_rate) j["non_default_rate"] = *r.non_default_rate;
  if (r.aba_mean_rounds) j["aba_mean_rounds"] = *r.aba_mean_rounds;
  if (r.max_sh_rounds) {
    j["max_sh_rounds"] = r.max_sh_rounds;
    j["max_rec_rounds"] = r.max_rec_rounds;
  }
  return j.dump();
}

SummaryRow row_from_json(std::string_view line) {
  SummaryRow r;
  try {
    auto j = json::parse(line);
    r.protocol = j.at("protocol").get<std::string>();
    r.adversary = j.value("adversary", "none");
    r.scheduler = j.value("scheduler", "random");
    r.n = j.at("n").get<uint32_t>();
    r.f = j.value("f", 0u);
    r.trials = j.value("trials", 0u);
    r.termination_rate = j.value("termination_rate", 0.0);
    r.agreement_rate = j.value("agreement_rate", 0.0);
    r.violation_trials = j.value("violation_trials", 0u);
    r.first_violation = j.value("first_violation", "");
    r.mean_messages = j.at("mean_messages").get<double>();
    r.max_messages = j.value("max_messages", uint64_t(0));
    r.mean_bits = j.at("mean_bits").get<double>();
    r.max_bits = j.value("max_bits", uint64_t(0));
    r.mean_rounds = j.at("mean_rounds").get<double>();
    r.max_rounds = j.value("max_rounds", 0u);
    if (j.contains("common_rate")) r.common_rate = j["common_rate"].get<double>();
    if (j.contains("one_rate")) r.one_rate = j["one_rate"].get<double>();
    r.min_candidates = j.value("min_candidates", 0u);
    if (j.contains("index_hist")) r.index_hist = j["index_hist"].get<std::vector<uint64_t>>();
    if (j.contains("non_default_rate")) r.non_default_rate = j["non_default_rate"].get<double>();
    if (j.contains("aba_mean_rounds")) r.aba_mean_rounds = j["aba_mean_rounds"].get<double>();
    r.max_sh_rounds = j.value("max_sh_rounds", 0u);
    r.max_rec_rounds = j.value("max_rec_rounds", 0u);
  } catch (const json::exception &e) {
    throw ParameterError(fmt::format("summary: bad row ({})", e.what()));
  }
  return r;
}

double row_metric(const SummaryRow &r, std::string_view metric) {
  if (metric == "messages") return r.mean_messages;
  if (metric == "bits") return r.mean_bits;
  if (metric == "rounds") return r.mean_rounds;
  throw ParameterError(fmt::format("metric: unknown metric '{}' (messages, bits, rounds)", metric));
}

std::string render_table(const std::vector<SummaryRow> &rows) {
  std::string out = fmt::format("{:<9} {:>3} {:>2} {:>6} {:>6} {:>6} {:>4} {:>12} {:>14} {:>7}  {}\n", "protocol", "n",
                                "f", "trials", "term", "agree", "viol", "messages", "bits", "rounds", "extra");
  for (const auto &r : rows) {
    std::string extra;
    if (r.common_rate) extra += fmt::format("common={:.3f} ", *r.common_rate);
    if (r.one_rate) extra += fmt::format("ones={:.3f} ", *r.one_rate);
    if (r.non_default_rate) extra += fmt::format("non-default={:.3f} ", *r.non_default_rate);
    if (!r.index_hist.empty()) extra += fmt::format("index={} ", fmt::join(r.index_hist, "/"));
    if (r.aba_mean_rounds) extra += fmt::format("coin-rounds={:.2f} ", *r.aba_mean_rounds);
    if (r.max_sh_rounds) extra += fmt::format("sh={} rec={} ", r.max_sh_rounds, r.max_rec_rounds);
    out += fmt::format("{:<9} {:>3} {:>2} {:>6} {:>6.3f} {:>6.3f} {:>4} {:>12.1f} {:>14.1f} {:>7.2f}  {}\n", r.protocol,
                       r.n, r.f, r.trials, r.termination_rate, r.agreement_rate, r.violation_trials, r.mean_messages,
                       r.mean_bits, r.mean_rounds, extra);
  }
  return out;
}

}  // namespace asyncbft::harness
