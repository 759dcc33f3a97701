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

#include <utility>
#include <vector>

#include "asyncbft/crypto/suite.hpp"

namespace asyncbft::crypto {

/// Coefficients, lowest degree first.
using Polynomial = std::vector<Scalar>;
/// Pedersen commitment c_j = g1·a_j + g2·b_j (written additively).
using Commitment = std::vector<Point>;

struct SharePair {
  uint32_t index = 0;
  Scalar a;
  Scalar b;
};

struct Sharing {
  Polynomial A;
  Polynomial B;
  std::vector<SharePair> shares;  // shares[i-1] belongs to party i
};

Scalar evaluate(const Suite &suite, const Polynomial &p, uint64_t x);

/// Degree-`degree` polynomial with constant term `secret`, other coefficients
/// drawn from `rng`.
Polynomial random_polynomial(const Suite &suite, const Scalar &secret, std::size_t degree, Rng &rng);

/// A and B of degree ≤ f with A(0) = secret; requires n ≥ 3f + 1.
Sharing shamir_share(const Suite &suite, const Scalar &secret, uint32_t f, uint32_t n, Rng &rng);
/// Same, for caller-chosen polynomials.
Sharing share_polynomials(const Suite &suite, Polynomial A, Polynomial B, uint32_t n);

/// Lagrange coefficients λ_j with Σ λ_j·p(x_j) = p(0). Indices must be
/// distinct and non-zero.
std::vector<Scalar> lagrange_at_zero(const Suite &suite, const std::vector<uint32_t> &indices);

/// Exactly degree+1 points with distinct indices ≥ 1.
Scalar interpolate_at_zero(const Suite &suite, const std::vector<std::pair<uint32_t, Scalar>> &points,
                           std::size_t degree);
/// Interpolation in the exponent.
Point interpolate_at_zero(const Suite &suite, const std::vector<std::pair<uint32_t, Point>> &points,
                          std::size_t degree);

Commitment pedersen_commit(const Suite &suite, const Polynomial &A, const Polynomial &B);
/// g1·a + g2·b == Σ_k c_k·i^k. False on malformed input.
bool verify_opening(const Suite &suite, uint32_t i, const Scalar &a, const Scalar &b, const Commitment &C);

Bytes encode_commitment(const Suite &suite, const Commitment &C);
Commitment read_commitment(const Suite &suite, Reader &r, std::size_t max_len = 1024);

}  // namespace asyncbft::crypto
