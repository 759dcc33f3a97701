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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "asyncbft/harness/presets.hpp"
#include "asyncbft/harness/stats.hpp"

using namespace asyncbft;
using namespace asyncbft::harness;

namespace {

ExperimentConfig make(Protocol p, std::vector<uint32_t> n, uint32_t trials, std::string adv = "none") {
  ExperimentConfig c;
  c.protocol = p;
  c.n = std::move(n);
  c.trials = trials;
  c.adversary = std::move(adv);
  return c;
}

std::string field_of(const ExperimentConfig &c) {
  try {
    c.validate();
  } catch (const ParameterError &e) {
    std::string m = e.what();
    return m.substr(0, m.find(':'));
  }
  return "";
}

}  // namespace

TEST_CASE("config validation names the bad field") {
  auto c = make(Protocol::Coin, {4}, 10);
  CHECK(field_of(c) == "");
  auto bad = c;
  bad.n = {5};
  bad.f = 2;
  CHECK(field_of(bad) == "f");
  bad = c;
  bad.n = {};
  CHECK(field_of(bad) == "n");
  bad = c;
  bad.adversary = "forge";  // election only
  CHECK(field_of(bad) == "adversary");
  bad = c;
  bad.scheduler = "lifo";
  CHECK(field_of(bad) == "scheduler");
  bad = c;
  bad.trials = 0;
  CHECK(field_of(bad) == "trials");
  bad = make(Protocol::Aba, {3}, 1, "contradict");  // f = 0 leaves nobody to corrupt
  CHECK(field_of(bad) == "adversary");
  CHECK_THROWS_AS(parse_protocol("vba"), ParameterError);
  CHECK(parse_protocol("election") == Protocol::Election);
}

TEST_CASE("config json round trip and overrides") {
  auto c = make(Protocol::Aba, {4, 7}, 33, "starve");
  c.f = 1;
  c.aba_coin = "perfect";
  c.seed = 99;
  auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));

  auto partial = config_from_json(R"({"trials": 5, "scheduler": "fifo"})", c);
  CHECK(partial.trials == 5);
  CHECK(partial.scheduler == "fifo");
  CHECK(partial.protocol == Protocol::Aba);
  CHECK_THROWS_AS(config_from_json(R"({"trails": 5})"), ParameterError);
  CHECK_THROWS_AS(config_from_json(R"({"trials": "five"})"), ParameterError);
  CHECK_THROWS_AS(config_from_json("{"), ParameterError);
}

TEST_CASE("log-log fit") {
  auto f = fit_loglog({1, 2, 4}, {3, 12, 48});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)));
  // numpy.polyfit(log x, log y, 1) for x = 2,4,8 and y = 1,3,4
  f = fit_loglog({2, 4, 8}, {1, 3, 4});
  CHECK(f.slope == doctest::Approx(1.0));
  CHECK(f.intercept == doctest::Approx(-0.55799214));
  CHECK(fit_loglog({4, 7, 10, 13}, {5, 5, 5, 5}).slope == doctest::Approx(0.0));
  CHECK_THROWS_AS(fit_loglog({4, 7}, {1, 2}), ParameterError);
  CHECK_THROWS_AS(fit_loglog({4, 4, 7}, {1, 1, 2}), ParameterError);
  CHECK_THROWS_AS(fit_loglog({4, 7, 10}, {1, 0, 2}), ParameterError);
}

TEST_CASE("chi-square against uniform") {
  auto u = chi_square_uniform({25, 25, 25, 25});
  CHECK(u.statistic == 0);
  CHECK(u.p_value == doctest::Approx(1.0));
  // closed form for 3 dof: erfc(sqrt(x/2)) + sqrt(2x/pi) exp(-x/2) at x = 20
  auto s = chi_square_uniform({10, 20, 30, 40});
  CHECK(s.statistic == doctest::Approx(20.0));
  CHECK(s.dof == 3);
  CHECK(s.p_value == doctest::Approx(0.00016974243555).epsilon(1e-6));
  CHECK_THROWS_AS(chi_square_uniform({0, 0}), ParameterError);
  CHECK_THROWS_AS(chi_square_uniform({7}), ParameterError);
}

TEST_CASE("summaries do not depend on trial order") {
  auto c = make(Protocol::Election, {4}, 24);
  c.threads = 1;
  auto res = run_experiment(c);
  auto trials = res.trials;
  Rng rng(5);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(trials.begin(), trials.end(), rng);
    CHECK(row_to_json(summarize(c, 4, trials)) == row_to_json(res.rows[0]));
  }
  const auto &r = res.rows[0];
  for (double rate : {r.termination_rate, r.agreement_rate, *r.non_default_rate}) {
    CHECK(rate >= 0);
    CHECK(rate <= 1);
  }
  uint64_t total = 0;
  for (auto h : r.index_hist) total += h;
  CHECK(total == 24);
}

TEST_CASE("summary rows survive json") {
  for (auto p : {Protocol::Coin, Protocol::Avss, Protocol::Aba, Protocol::Election}) {
    auto c = make(p, {4}, 4);
    c.threads = 1;
    auto row = run_experiment(c).rows[0];
    auto line = row_to_json(row);
    CHECK(row_to_json(row_from_json(line)) == line);
    CHECK(row_metric(row, "bits") == row.mean_bits);
  }
  CHECK_THROWS_AS(row_metric(SummaryRow{}, "latency"), ParameterError);
  CHECK(render_table({}).find("protocol") != std::string::npos);
}

TEST_CASE("experiments are deterministic in the master seed") {
  auto c = make(Protocol::Coin, {4, 7}, 5);
  c.threads = 1;
  auto a = run_experiment(c);
  c.threads = 4;
  auto b = run_experiment(c);
  REQUIRE(a.rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(row_to_json(a.rows[i]) == row_to_json(b.rows[i]));
  c.seed = 2;
  auto d = run_experiment(c);
  CHECK(trial_seed(c, 4, 0) != trial_seed(make(Protocol::Coin, {4}, 5), 4, 0));
  bool any_diff = false;
  for (std::size_t i = 0; i < a.trials.size(); ++i) any_diff |= a.trials[i].bits != d.trials[i].bits;
  CHECK(any_diff);
}

TEST_CASE("replay reproduces and detects tampering") {
  auto c = make(Protocol::Seeding, {4}, 1, "equivocate");
  sim::Transcript t;
  auto r = run_trial(c, 4, 0, &t);
  CHECK(r.violations.empty());
  auto rep = replay(t);
  CHECK(rep.divergence.empty());
  CHECK(rep.metrics == t.metrics);

  auto tampered = t;
  tampered.events[tampered.events.size() / 2].env.payload.push_back(0);
  CHECK(!replay(tampered).divergence.empty());

  auto headless = t;
  headless.config = "{}";
  CHECK_THROWS_AS(replay(headless), ParameterError);
}

TEST_CASE("avss trials measure phase rounds") {
  auto c = make(Protocol::Avss, {4}, 1);
  c.scheduler = "fifo";
  auto r = run_trial(c, 4, 0);
  CHECK(r.sh_rounds == 5);
  CHECK(r.rec_rounds == 2);
  CHECK(r.violations.empty());
  // A corrupt dealer's run is still checked but phase rounds are not reported.
  c.adversary = "bad-shares";
  auto b = run_trial(c, 4, 1);
  CHECK(b.violations.empty());
  CHECK(b.sh_rounds == 0);
}

TEST_CASE("secrecy oracle: f shares leave every key possible") {
  auto s = avss_secrecy_counts(7);
  CHECK(s.q == 97);
  REQUIRE(s.counts.size() == 97);
  for (auto k : s.counts) CHECK(k == s.counts[0]);
  CHECK(s.counts[0] > 0);
}

TEST_CASE("pvss pipelines") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto f = pvss_pipeline(seed);
    CHECK_MESSAGE(f.empty(), "seed ", seed, ": ", f.empty() ? "" : f.front());
  }
}

TEST_CASE("presets are named and unknown ones rejected") {
  CHECK(preset_names().size() == 11);
  CHECK(preset_names().front() == "acceptance-1");
  CHECK_THROWS_AS(run_preset("acceptance-12"), ParameterError);
  auto rep = run_preset("acceptance-11");
  CHECK(rep.pass());
}
