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

#include <cstdint>
#include <vector>

namespace asyncbft::harness {

struct ChiSquare {
  double statistic = 0;
  double p_value = 1;
  uint32_t dof = 0;
};

/// Pearson goodness of fit of `counts` against the uniform distribution.
ChiSquare chi_square_uniform(const std::vector<uint64_t> &counts);

/// Least-squares fit of log(y) against log(x).
struct LogLogFit {
  double slope = 0;
  double intercept = 0;
};
/// Throws ParameterError with fewer than 3 distinct x or a non-positive value.
LogLogFit fit_loglog(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace asyncbft::harness
