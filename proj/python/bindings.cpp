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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asyncbft/harness/presets.hpp"
#include "asyncbft/harness/stats.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace asyncbft;
using namespace asyncbft::harness;

namespace {

// Rows and configs cross the boundary as JSON text; the python side decodes.
std::vector<std::string> run_json(const std::string &config, uint32_t threads) {
  auto c = config_from_json(config);
  c.threads = threads;
  ExperimentResult res;
  {
    py::gil_scoped_release nogil;
    res = run_experiment(c);
  }
  std::vector<std::string> rows;
  for (const auto &r : res.rows) rows.push_back(row_to_json(r));
  return rows;
}

py::dict preset(const std::string &name, uint32_t threads) {
  PresetReport rep;
  {
    py::gil_scoped_release nogil;
    rep = run_preset(name, {threads});
  }
  py::list checks;
  for (const auto &c : rep.checks) checks.append(py::dict("name"_a = c.name, "passed"_a = c.pass, "detail"_a = c.detail));
  std::vector<std::string> rows;
  for (const auto &r : rep.rows) rows.push_back(row_to_json(r));
  return py::dict("name"_a = rep.name, "title"_a = rep.title, "passed"_a = rep.pass(), "seconds"_a = rep.seconds,
                  "checks"_a = checks, "rows"_a = rows);
}

py::bytes transcript(const std::string &config, uint32_t n, uint32_t trial) {
  sim::Transcript t;
  run_trial(config_from_json(config), n, trial, &t);
  auto b = sim::encode_transcript(t);
  return py::bytes(reinterpret_cast<const char *>(b.data()), b.size());
}

std::vector<std::string> replay_bytes(const py::bytes &data) {
  std::string s = data;
  return replay(sim::decode_transcript(Bytes(s.begin(), s.end()))).divergence;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "asyncbft simulation harness";
  m.def("run_json", &run_json, "config_json"_a, "threads"_a = 0);
  m.def("preset", &preset, "name"_a, "threads"_a = 0);
  m.def("preset_names", &preset_names);
  m.def("transcript", &transcript, "config_json"_a, "n"_a, "trial"_a);
  m.def("replay", &replay_bytes, "data"_a);
  m.def("fit_loglog", [](const std::vector<double> &x, const std::vector<double> &y) {
    auto f = fit_loglog(x, y);
    return py::make_tuple(f.slope, f.intercept);
  });
  m.def("chi_square_uniform", [](const std::vector<uint64_t> &counts) {
    auto c = chi_square_uniform(counts);
    return py::make_tuple(c.statistic, c.p_value, c.dof);
  });
  py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
}
