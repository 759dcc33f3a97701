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

#include "asyncbft/harness/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <set>

#include "asyncbft/bytes.hpp"

namespace asyncbft::harness {

ChiSquare chi_square_uniform(const std::vector<uint64_t> &counts) {
  if (counts.size() < 2) throw ParameterError("chi-square needs at least two categories");
  double total = 0;
  for (auto c : counts) total += double(c);
  if (total == 0) throw ParameterError("chi-square over zero observations");
  double expect = total / double(counts.size());
  ChiSquare out;
  for (auto c : counts) out.statistic += (double(c) - expect) * (double(c) - expect) / expect;
  out.dof = uint32_t(counts.size() - 1);
  boost::math::chi_squared dist(out.dof);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

LogLogFit fit_loglog(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size()) throw ParameterError("fit: x and y differ in length");
  if (std::set<double>(x.begin(), x.end()).size() < 3) throw ParameterError("fit: need at least 3 distinct n values");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  auto k = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw ParameterError("fit: values must be positive");
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  LogLogFit f;
  f.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / k;
  return f;
}

}  // namespace asyncbft::harness
