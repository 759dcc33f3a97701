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

// asyncbft: experiment runner.
//
//   asyncbft run --protocol coin --n 4,7 --trials 200 [--config cfg.json] [--out dir]
//   asyncbft run --preset acceptance-6
//   asyncbft fit --summary out/summary.jsonl --metric bits [--min 1.6 --max 2.3]
//   asyncbft replay out/transcripts/coin-n4-t0.bin
//
// Exit codes: 0 all assertions held, 1 an assertion failed, 2 usage error.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "asyncbft/harness/presets.hpp"
#include "asyncbft/harness/stats.hpp"

namespace fs = std::filesystem;
using namespace asyncbft;
using namespace asyncbft::harness;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParameterError(fmt::format("cannot read {}", p.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &p, std::string_view data) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out.write(data.data(), std::streamsize(data.size()));
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", p.string()));
}

std::string default_out() {
  const char *env = std::getenv("ASYNCBFT_OUT");
  return env && *env ? env : "asyncbft-out";
}

void write_summary(const fs::path &out, const std::vector<SummaryRow> &rows) {
  std::string lines;
  for (const auto &r : rows) lines += row_to_json(r) + "\n";
  write_file(out / "summary.jsonl", lines);
  write_file(out / "summary.txt", render_table(rows));
}

struct RunArgs {
  std::string preset, config, out = default_out();
  uint32_t transcripts = 0;
  bool quiet = false;
  // flag overrides
  std::string protocol, crypto, coin_mode, aba_coin, scheduler, adversary, inputs;
  std::vector<uint32_t> n;
  uint32_t f = 0, trials = 0, threads = 0;
  uint64_t seed = 0, step_cap = 0;
};

int run_preset_cmd(const RunArgs &a, uint32_t threads) {
  std::vector<std::string> names;
  if (a.preset == "all")
    names = preset_names();
  else
    names = {a.preset};
  bool ok = true;
  std::vector<SummaryRow> rows;
  for (const auto &name : names) {
    auto rep = run_preset(name, {threads});
    for (const auto &c : rep.checks)
      fmt::print("  [{}] {}: {}\n", c.pass ? "pass" : "FAIL", c.name, c.detail);
    fmt::print("{} {} ({}) {:.1f}s\n", rep.pass() ? "PASS" : "FAIL", rep.name, rep.title, rep.seconds);
    ok = ok && rep.pass();
    rows.insert(rows.end(), rep.rows.begin(), rep.rows.end());
  }
  write_summary(a.out, rows);
  return ok ? kPass : kFail;
}

int run_cmd(const RunArgs &a, CLI::App &sub) {
  auto given = [&](const char *opt) { return sub.count(opt) > 0; };
  if (!a.preset.empty()) return run_preset_cmd(a, a.threads);

  ExperimentConfig c;
  if (!a.config.empty()) c = config_from_json(slurp(a.config), c);
  if (given("--protocol")) c.protocol = parse_protocol(a.protocol);
  if (given("--n")) c.n = a.n;
  if (given("--f")) c.f = a.f;
  if (given("--crypto")) c.crypto = a.crypto;
  if (given("--coin-mode")) c.coin_mode = a.coin_mode;
  if (given("--aba-coin")) c.aba_coin = a.aba_coin;
  if (given("--scheduler")) c.scheduler = a.scheduler;
  if (given("--adversary")) c.adversary = a.adversary;
  if (given("--inputs")) c.inputs = a.inputs;
  if (given("--trials")) c.trials = a.trials;
  if (given("--seed")) c.seed = a.seed;
  if (given("--threads")) c.threads = a.threads;
  if (given("--step-cap")) c.step_cap = a.step_cap;
  c.validate();

  auto res = run_experiment(c);
  fs::path out = a.out;
  write_summary(out, res.rows);
  write_file(out / "config.json", config_to_json(c) + "\n");
  for (auto n : c.n) {
    for (uint32_t t = 0; t < std::min(a.transcripts, c.trials); ++t) {
      sim::Transcript tr;
      run_trial(c, n, t, &tr);
      auto bytes = sim::encode_transcript(tr);
      write_file(out / "transcripts" / fmt::format("{}-n{}-t{}.bin", protocol_name(c.protocol), n, t),
                 std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
    }
  }
  if (!a.quiet) fmt::print("{}", render_table(res.rows));
  uint32_t bad = 0;
  for (const auto &r : res.rows) {
    bad += r.violation_trials;
    if (r.violation_trials) fmt::print(stderr, "n={}: {} violating trials; {}\n", r.n, r.violation_trials, r.first_violation);
  }
  fmt::print("wrote {}\n", (out / "summary.jsonl").string());
  return bad ? kFail : kPass;
}

int fit_cmd(const std::string &summary, const std::string &metric, const std::string &protocol,
            std::optional<double> lo, std::optional<double> hi) {
  std::vector<double> x, y;
  std::istringstream in(slurp(summary));
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    auto r = row_from_json(line);
    if (!protocol.empty() && r.protocol != protocol) continue;
    x.push_back(r.n);
    y.push_back(row_metric(r, metric));
  }
  auto fit = fit_loglog(x, y);
  fmt::print("metric {} over {} rows: slope {:.4f} intercept {:.4f}\n", metric, x.size(), fit.slope, fit.intercept);
  if ((lo && fit.slope < *lo) || (hi && fit.slope > *hi)) {
    fmt::print("slope outside [{}, {}]\n", lo ? fmt::format("{}", *lo) : "-inf", hi ? fmt::format("{}", *hi) : "inf");
    return kFail;
  }
  return kPass;
}

int replay_cmd(const std::string &path) {
  auto text = slurp(path);
  sim::Transcript t;
  try {
    t = sim::decode_transcript(Bytes(text.begin(), text.end()));
  } catch (const DecodeError &e) {
    fmt::print("integrity error at byte {}: {}\n", e.offset(), e.what());
    return kFail;
  }
  auto rep = replay(t);
  if (rep.divergence.empty()) {
    fmt::print("replay identical: {} events, messages={} bits={} rounds={}\n", t.events.size(), rep.metrics.messages,
               rep.metrics.bits, rep.metrics.rounds);
    return kPass;
  }
  for (const auto &d : rep.divergence) fmt::print("divergence: {}\n", d);
  return kFail;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"asyncbft experiment runner"};
  app.require_subcommand(1);

  RunArgs ra;
  auto *run = app.add_subcommand("run", "run an experiment or a named preset");
  run->add_option("--preset", ra.preset, "acceptance-1 .. acceptance-11, or all");
  run->add_option("--config", ra.config, "JSON config file; flags override its keys")->check(CLI::ExistingFile);
  run->add_option("--out", ra.out, "output directory (default $ASYNCBFT_OUT or ./asyncbft-out)");
  run->add_option("--transcripts", ra.transcripts, "record this many trials per n as transcripts");
  run->add_flag("--quiet", ra.quiet, "no table on stdout");
  run->add_option("--protocol", ra.protocol, "avss | seeding | rbc | coin | aba | election");
  run->add_option("--n", ra.n, "party counts, comma separated")->delimiter(',');
  run->add_option("--f", ra.f, "corruption bound (default floor((n-1)/3))");
  run->add_option("--crypto", ra.crypto, "mock | real");
  run->add_option("--coin-mode", ra.coin_mode, "genesis | seeding");
  run->add_option("--aba-coin", ra.aba_coin, "protocol | perfect");
  run->add_option("--scheduler", ra.scheduler, "random | fifo");
  run->add_option("--adversary", ra.adversary, "per-protocol strategy name");
  run->add_option("--inputs", ra.inputs, "aba inputs: mixed | zero | one | split");
  run->add_option("--trials", ra.trials);
  run->add_option("--seed", ra.seed, "master seed");
  run->add_option("--threads", ra.threads, "worker threads (0: all cores)");
  run->add_option("--step-cap", ra.step_cap, "deliveries per run before a liveness report");

  std::string summary = (fs::path(default_out()) / "summary.jsonl").string(), metric = "bits", fprotocol;
  std::optional<double> lo, hi;
  auto *fit = app.add_subcommand("fit", "log-log slope of a metric over n");
  fit->add_option("--summary", summary, "summary.jsonl from run");
  fit->add_option("--metric", metric, "messages | bits | rounds");
  fit->add_option("--protocol", fprotocol, "only rows of this protocol");
  fit->add_option("--min", lo, "fail if the slope is below");
  fit->add_option("--max", hi, "fail if the slope is above");

  std::string transcript;
  auto *rep = app.add_subcommand("replay", "re-execute a transcript and report divergence");
  rep->add_option("transcript", transcript)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*run) return run_cmd(ra, *run);
    if (*fit) return fit_cmd(summary, metric, fprotocol, lo, hi);
    if (*rep) return replay_cmd(transcript);
  } catch (const ParameterError &e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception &e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kFail;
  }
  return kUsage;
}
