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

#include "asyncbft/harness/presets.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

#include "asyncbft/crypto/polynomial.hpp"
#include "asyncbft/harness/stats.hpp"
#include "asyncbft/pvss.hpp"

namespace asyncbft::harness {

bool PresetReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Ctx {
  PresetReport &rep;
  const PresetOptions &opt;

  ExperimentResult run(ExperimentConfig c) {
    c.threads = opt.threads;
    auto res = run_experiment(c);
    for (const auto &r : res.rows) rep.rows.push_back(r);
    return res;
  }
  void check(std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  }
  void no_violations(const std::string &what, const ExperimentResult &res) {
    uint32_t bad = 0, trials = 0;
    std::string first;
    for (const auto &r : res.rows) {
      bad += r.violation_trials;
      trials += r.trials;
      if (first.empty()) first = r.first_violation;
    }
    check(what + ": zero violations", bad == 0,
          bad == 0 ? fmt::format("{} trials", trials) : fmt::format("{} of {} trials, {}", bad, trials, first));
  }
  void within_time(double limit, Clock::time_point t0, std::string what = "runtime") {
    double s = since(t0);
    check(fmt::format("{} <= {:.0f}s", what, limit), s <= limit, fmt::format("{:.1f}s", s));
  }
  void slope(const std::string &what, const ExperimentResult &res, std::string_view metric, double lo, double hi) {
    std::vector<double> x, y;
    for (const auto &r : res.rows) {
      x.push_back(r.n);
      y.push_back(row_metric(r, metric));
    }
    auto fit = fit_loglog(x, y);
    check(fmt::format("{} slope in [{}, {}]", what, lo, hi), fit.slope >= lo && fit.slope <= hi,
          fmt::format("slope {:.3f}", fit.slope));
  }
};

ExperimentConfig cfg(Protocol p, std::vector<uint32_t> n, uint32_t trials, std::string adversary = "none") {
  ExperimentConfig c;
  c.protocol = p;
  c.n = std::move(n);
  c.trials = trials;
  c.adversary = std::move(adversary);
  return c;
}

void avss_properties(Ctx &x) {
  auto t0 = Clock::now();
  for (std::string adv : {"none", "crash-after-keyshare", "short-quorum", "equivocate-cipher", "split-commitment",
                          "bad-shares", "partial-cipher"})
    x.no_violations("avss " + adv, x.run(cfg(Protocol::Avss, {4}, 1000, adv)));
  x.within_time(120, t0, "property suite");

  t0 = Clock::now();
  bool uniform = true;
  std::string detail;
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    auto s = avss_secrecy_counts(seed);
    auto [lo, hi] = std::minmax_element(s.counts.begin(), s.counts.end());
    uniform = uniform && *lo == *hi && *lo > 0;
    detail += fmt::format("{}sharing {}: {} keys x {} pairs each", seed > 1 ? "; " : "", seed, s.counts.size(), *lo);
  }
  x.check("secrecy: every key equally consistent with f shares", uniform, detail);
  x.within_time(60, t0, "secrecy oracle");
}

void avss_rounds(Ctx &x) {
  auto fifo = cfg(Protocol::Avss, {4, 7}, 20);
  fifo.scheduler = "fifo";
  auto res = x.run(fifo);
  bool exact = true;
  for (const auto &t : res.trials) exact = exact && t.sh_rounds == 5 && t.rec_rounds == 2;
  x.check("fifo: Sh = 5 and Rec = 2 rounds in every run", exact,
          fmt::format("max Sh {} Rec {}", res.rows[0].max_sh_rounds, res.rows[0].max_rec_rounds));
  auto rnd = x.run(cfg(Protocol::Avss, {4, 7}, 200));
  uint32_t sh = 0, rec = 0;
  for (const auto &r : rnd.rows) {
    sh = std::max(sh, r.max_sh_rounds);
    rec = std::max(rec, r.max_rec_rounds);
  }
  x.check("random schedules: Sh <= 5 and Rec <= 2", sh <= 5 && rec <= 2 && sh > 0,
          fmt::format("max Sh {} Rec {}", sh, rec));
  x.no_violations("avss honest", rnd);
}

void avss_complexity(Ctx &x) {
  auto t0 = Clock::now();
  auto res = x.run(cfg(Protocol::Avss, {4, 7, 10, 13}, 20));
  x.slope("avss bits", res, "bits", 1.6, 2.3);
  x.within_time(300, t0);
}

void seeding_suite(Ctx &x) {
  auto t0 = Clock::now();
  for (std::string adv : {"none", "equivocate", "silent", "silent-leader"})
    x.no_violations("seeding " + adv, x.run(cfg(Protocol::Seeding, {4}, 250, adv)));
  auto sweep = x.run(cfg(Protocol::Seeding, {4, 7, 10, 13}, 10));
  x.no_violations("seeding sweep", sweep);
  x.slope("seeding messages", sweep, "messages", 1.6, 2.3);
  x.within_time(180, t0);
}

void pvss_suite(Ctx &x) {
  auto t0 = Clock::now();
  uint32_t failed = 0;
  std::string first;
  for (uint64_t s = 1; s <= 500; ++s) {
    auto f = pvss_pipeline(s);
    if (!f.empty() && failed++ == 0) first = fmt::format("pipeline {}: {}", s, f.front());
  }
  x.check("pvss: 500 pipelines, zero failures", failed == 0, failed ? first : "500 pipelines");
  x.within_time(60, t0);
}

void coin_fairness(Ctx &x) {
  auto t0 = Clock::now();
  auto honest = x.run(cfg(Protocol::Coin, {4}, 2000));
  auto starve = x.run(cfg(Protocol::Coin, {4}, 2000, "starve"));
  const auto &h = honest.rows[0], &s = starve.rows[0];
  x.check("honest common rate >= 0.60", *h.common_rate >= 0.60, fmt::format("{:.4f}", *h.common_rate));
  x.check("starving common rate >= 1/3 - 0.05", *s.common_rate >= 1.0 / 3 - 0.05, fmt::format("{:.4f}", *s.common_rate));
  x.no_violations("coin honest (core set, termination)", honest);
  x.no_violations("coin starving (core set, termination)", starve);
  uint64_t agree = 0, ones = 0;
  for (const auto *res : {&honest, &starve})
    for (const auto &t : res->trials)
      if (t.bit) {
        ++agree;
        ones += *t.bit;
      }
  double p = agree ? double(ones) / double(agree) : 0;
  x.check("bias within 0.5 +- 0.03 on agreeing runs", std::abs(p - 0.5) <= 0.03,
          fmt::format("{} of {} agreeing runs output 1 ({:.4f})", ones, agree, p));
  x.within_time(300, t0);
}

void coin_complexity(Ctx &x) {
  auto t0 = Clock::now();
  auto res = x.run(cfg(Protocol::Coin, {4, 7, 10, 13}, 4));
  x.no_violations("coin sweep", res);
  x.slope("coin bits", res, "bits", 2.5, 3.3);
  x.within_time(600, t0);
}

void aba_suite(Ctx &x) {
  auto t0 = Clock::now();
  std::vector<double> real_rounds;
  for (auto [adv, trials] : std::vector<std::pair<std::string, uint32_t>>{{"contradict", 500}, {"silent", 250}, {"starve", 250}}) {
    auto res = x.run(cfg(Protocol::Aba, {4}, trials, adv));
    x.no_violations("aba " + adv, res);
    for (const auto &t : res.trials)
      if (t.aba_rounds) real_rounds.push_back(*t.aba_rounds);
  }
  double mean = real_rounds.empty() ? 1e9 : std::accumulate(real_rounds.begin(), real_rounds.end(), 0.0) / double(real_rounds.size());
  x.check("mean coin rounds <= 9 with the protocol coin", mean <= 9, fmt::format("{:.3f}", mean));
  auto perfect = cfg(Protocol::Aba, {4}, 1000, "contradict");
  perfect.aba_coin = "perfect";
  auto pr = x.run(perfect);
  x.no_violations("aba perfect coin", pr);
  double pm = pr.rows[0].aba_mean_rounds.value_or(1e9);
  x.check("mean coin rounds <= 4 with a perfect coin", pm <= 4, fmt::format("{:.3f}", pm));
  x.within_time(600, t0);
}

void election_suite(Ctx &x) {
  auto t0 = Clock::now();
  for (auto [adv, trials] : std::vector<std::pair<std::string, uint32_t>>{{"forge", 1000}, {"silent", 500}})
    x.no_violations("election " + adv, x.run(cfg(Protocol::Election, {4}, trials, adv)));
  auto starve = x.run(cfg(Protocol::Election, {4}, 500, "starve"));
  x.no_violations("election starve", starve);
  double nd = starve.rows[0].non_default_rate.value_or(0);
  x.check("starving non-default rate >= 1/3 - 0.05", nd >= 1.0 / 3 - 0.05, fmt::format("{:.4f}", nd));
  auto honest = x.run(cfg(Protocol::Election, {4}, 5000));
  x.no_violations("election honest", honest);
  auto cs = chi_square_uniform(honest.rows[0].index_hist);
  x.check("honest index chi-square p > 0.001", cs.p_value > 0.001,
          fmt::format("chi2 {:.3f} (dof {}), p {:.4f}", cs.statistic, cs.dof, cs.p_value));
  x.within_time(900, t0);
}

void determinism(Ctx &x) {
  bool same = true;
  for (auto p : {Protocol::Avss, Protocol::Seeding, Protocol::Coin, Protocol::Aba, Protocol::Election}) {
    auto c = cfg(p, {4}, 6, p == Protocol::Avss ? "equivocate-cipher" : "none");
    c.threads = 1;
    auto a = run_experiment(c);
    c.threads = 3;
    auto b = run_experiment(c);
    same = same && row_to_json(a.rows[0]) == row_to_json(b.rows[0]);
  }
  x.check("summaries identical across runs and thread counts", same, "");

  uint32_t replays = 0, diverged = 0, caught = 0;
  for (auto p : {Protocol::Avss, Protocol::Rbc, Protocol::Seeding, Protocol::Coin, Protocol::Aba, Protocol::Election}) {
    for (uint32_t t = 0; t < 2; ++t) {
      auto c = cfg(p, {4}, 2, t ? "silent" : "none");
      if (p == Protocol::Avss && t) c.adversary = "bad-shares";
      sim::Transcript a, b;
      run_trial(c, 4, t, &a);
      run_trial(c, 4, t, &b);
      bool bytes_equal = sim::encode_transcript(a) == sim::encode_transcript(b);
      auto rep = replay(sim::decode_transcript(sim::encode_transcript(a)));
      ++replays;
      diverged += !bytes_equal || !rep.divergence.empty() || !(rep.metrics == a.metrics);
      auto tampered = a;
      for (auto &e : tampered.events)
        if (!e.env.payload.empty()) {
          e.env.payload.back() ^= 1;
          break;
        }
      caught += !replay(tampered).divergence.empty();
    }
  }
  x.check("transcripts byte-identical and replays diverge nowhere", diverged == 0,
          fmt::format("{} transcripts, {} diverged", replays, diverged));
  x.check("a flipped payload byte is reported", caught == replays, fmt::format("{} of {}", caught, replays));
}

void non_reproduced(Ctx &x) {
  x.check("not reproduced: asymptotic constants of the complexity comparison", true,
          "only fitted exponents at n <= 13 are measured");
  x.check("not reproduced: real-crypto performance at large security parameters", true,
          "runs use the mock group; slopes and invariants are the substitutes");
}

struct Entry {
  std::string title;
  void (*fn)(Ctx &);
};

const std::map<std::string, Entry> &table() {
  static const std::map<std::string, Entry> t = {
      {"acceptance-1", {"AVSS totality, commitment, correctness and secrecy", avss_properties}},
      {"acceptance-2", {"AVSS virtual rounds", avss_rounds}},
      {"acceptance-3", {"AVSS bit complexity slope", avss_complexity}},
      {"acceptance-4", {"seeding properties and message slope", seeding_suite}},
      {"acceptance-5", {"PVSS pipelines", pvss_suite}},
      {"acceptance-6", {"coin fairness", coin_fairness}},
      {"acceptance-7", {"coin bit complexity slope", coin_complexity}},
      {"acceptance-8", {"binary agreement", aba_suite}},
      {"acceptance-9", {"leader election", election_suite}},
      {"acceptance-10", {"determinism and replay", determinism}},
      {"acceptance-11", {"what is not reproduced", non_reproduced}},
  };
  return t;
}

}  // namespace

const std::vector<std::string> &preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (int i = 1; i <= 11; ++i) v.push_back(fmt::format("acceptance-{}", i));
    return v;
  }();
  return names;
}

PresetReport run_preset(std::string_view name, const PresetOptions &opt) {
  auto it = table().find(std::string(name));
  if (it == table().end()) throw ParameterError(fmt::format("preset: unknown name '{}'", name));
  PresetReport rep;
  rep.name = it->first;
  rep.title = it->second.title;
  Ctx x{rep, opt};
  auto t0 = Clock::now();
  it->second.fn(x);
  rep.seconds = since(t0);
  return rep;
}

SecrecyCounts avss_secrecy_counts(uint64_t seed) {
  ExperimentConfig c = cfg(Protocol::Avss, {4}, 1);
  c.seed = seed;
  c.scheduler = "fifo";
  sim::Transcript tr;
  run_trial(c, 4, 0, &tr);  // dealer 1; party 4 plays the corrupt observer
  auto suite = crypto::make_mock_suite();
  const uint64_t q = suite->mock_modulus();

  // Discrete logs by enumeration; fine for a 97-element group.
  std::map<crypto::Point, uint64_t> dlog;
  std::map<crypto::Scalar, uint64_t> sval;
  for (uint64_t k = 0; k < q; ++k) {
    dlog[suite->mul_g1(suite->scalar(k))] = k;
    sval[suite->scalar(k)] = k;
  }
  const uint64_t d = dlog.at(suite->g2());

  std::optional<crypto::Commitment> C;
  uint64_t a = 0, b = 0;
  const uint64_t j = 4;
  for (const auto &e : tr.events) {
    if (e.env.tag != sim::Tag::KeyShare || e.env.to != j) continue;
    Reader r(e.env.payload);
    C = crypto::read_commitment(*suite, r, 4);
    a = sval.at(suite->read_scalar(r));
    b = sval.at(suite->read_scalar(r));
  }
  if (!C || C->size() != 2) throw std::logic_error("secrecy oracle: no KeyShare for the observer");
  const uint64_t c0 = dlog.at((*C)[0]), c1 = dlog.at((*C)[1]);

  // View: C_k = A_k + d B_k (in the exponent), a = A(j), b = B(j).
  SecrecyCounts out{q, std::vector<uint64_t>(q, 0)};
  for (uint64_t s = 0; s < q; ++s)
    for (uint64_t a1 = 0; a1 < q; ++a1)
      for (uint64_t b0 = 0; b0 < q; ++b0)
        for (uint64_t b1 = 0; b1 < q; ++b1)
          out.counts[s] += (s + d * b0) % q == c0 && (a1 + d * b1) % q == c1 && (s + a1 * j) % q == a &&
                           (b0 + b1 * j) % q == b;
  return out;
}

std::vector<std::string> pvss_pipeline(uint64_t seed) {
  // A larger mock modulus keeps proof soundness error (1/q) out of the
  // rejection checks.
  auto suite = crypto::make_mock_suite(1000003);
  const auto &S = *suite;
  Rng rng = Rng(seed).fork("pvss-pipeline");
  const uint32_t sizes[] = {4, 7, 10};
  uint32_t n = sizes[rng.uniform(3)], f = (n - 1) / 3;
  auto ring = crypto::KeyRing::generate(suite, n, rng);
  const auto &dir = *ring.directory();
  pvss::Params p{n, f, fmt::format("pvss/{}", seed)};
  std::vector<std::string> fail;
  auto expect = [&](bool ok, std::string what) {
    if (!ok) fail.push_back(std::move(what));
  };

  std::vector<pvss::Script> pool;
  std::vector<uint32_t> weight(n, 0);
  auto total = S.scalar(0);
  auto count = 1 + rng.uniform(2 * n);
  for (uint64_t k = 0; k < count; ++k) {
    PartyId dealer = PartyId(1 + rng.uniform(n));
    auto sec = S.random_scalar(rng);
    auto sc = pvss::deal(p, dir, dealer, ring.secret(dealer), sec, rng);
    expect(pvss::vrfy_script(p, dir, sc), "fresh script does not verify");
    std::vector<uint32_t> single(n, 0);
    single[dealer - 1] = 1;
    expect(pvss::weights(p, sc) == single, "fresh script weight is not the dealer's unit vector");
    weight[dealer - 1]++;
    total = S.add(total, sec);
    pool.push_back(std::move(sc));
  }
  {
    auto bad = pool[0];
    auto i = rng.uniform(n);
    bad.v[i] = S.add(bad.v[i], S.g1());
    expect(!pvss::vrfy_script(p, dir, bad), "tampered v accepted");
  }
  while (pool.size() > 1) {
    auto i = rng.uniform(pool.size());
    auto x = std::move(pool[i]);
    pool.erase(pool.begin() + long(i));
    auto j = rng.uniform(pool.size());
    pool[j] = pvss::agg_scripts(p, dir, x, pool[j]);
  }
  const auto &sc = pool[0];
  expect(pvss::vrfy_script(p, dir, sc), "aggregate does not verify");
  expect(pvss::weights(p, sc) == weight, "weights are not additive");

  std::vector<pvss::Share> shares;
  for (PartyId j = 1; j <= n; ++j) {
    shares.push_back(pvss::get_share(p, S, j, ring.secret(j), sc));
    expect(pvss::vrfy_share(p, dir, j, shares.back(), sc), "honest share rejected");
  }
  PartyId other = 1 + PartyId(rng.uniform(n));
  PartyId wrong_for = other % n + 1;
  expect(!pvss::vrfy_share(p, dir, wrong_for, pvss::get_share(p, S, wrong_for, ring.secret(other), sc), sc),
         "share decrypted with the wrong key accepted");
  auto forged = shares[0];
  forged.value = S.add(forged.value, S.g2());
  expect(!pvss::vrfy_share(p, dir, 1, forged, sc), "shifted share accepted");

  auto secret = S.mul_g2(total);
  for (int k = 0; k < 3; ++k) {
    auto pick = shares;
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(p.t());
    auto got = pvss::agg_shares(p, dir, sc, pick);
    expect(got == secret, "subset reconstructs a different secret");
    expect(pvss::vrfy_secret(p, dir, got, pick, sc), "vrfy_secret rejects the true secret");
    expect(!pvss::vrfy_secret(p, dir, S.add(got, S.g2()), pick, sc), "vrfy_secret accepts a wrong secret");
  }
  return fail;
}

}  // namespace asyncbft::harness
