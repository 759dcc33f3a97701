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

#include <optional>
#include <string>
#include <vector>

#include "asyncbft/harness/experiment.hpp"

namespace asyncbft::harness {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PresetReport {
  std::string name, title;
  std::vector<Check> checks;
  std::vector<SummaryRow> rows;
  double seconds = 0;

  bool pass() const;
};

struct PresetOptions {
  uint32_t threads = 0;
};

/// "acceptance-1" .. "acceptance-11".
const std::vector<std::string> &preset_names();
/// ParameterError for unknown names.
PresetReport run_preset(std::string_view name, const PresetOptions &opt = {});

/// Secrecy oracle: deals one real AVSS sharing at n = 4 over the mock group
/// (q = 97) and, from what f = 1 party sees (commitment vector plus its share
/// pair), counts for every candidate key the polynomial pairs consistent with
/// that view, by brute force over all q^3 unknown coefficients.
struct SecrecyCounts {
  uint64_t q = 0;
  std::vector<uint64_t> counts;  // index = candidate key
};
SecrecyCounts avss_secrecy_counts(uint64_t seed);

/// One randomized PVSS pipeline: deal, verify, aggregate along a random tree,
/// decrypt, reconstruct from random subsets, check secrets and weights.
/// Returns the failed checks (empty on success).
std::vector<std::string> pvss_pipeline(uint64_t seed);

}  // namespace asyncbft::harness
