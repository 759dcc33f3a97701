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

#include "asyncbft/crypto/polynomial.hpp"

#include <set>

namespace asyncbft::crypto {

Scalar evaluate(const Suite &suite, const Polynomial &p, uint64_t x) {
  // Horner
  auto xs = suite.scalar(x);
  Scalar acc = suite.scalar(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = suite.add(suite.mul(acc, xs), *it);
  return acc;
}

Polynomial random_polynomial(const Suite &suite, const Scalar &secret, std::size_t degree, Rng &rng) {
  Polynomial p;
  p.reserve(degree + 1);
  p.push_back(secret);
  for (std::size_t j = 1; j <= degree; ++j) p.push_back(suite.random_scalar(rng));
  return p;
}

Sharing shamir_share(const Suite &suite, const Scalar &secret, uint32_t f, uint32_t n, Rng &rng) {
  if (n < 3 * f + 1) throw ParameterError("shamir_share requires n >= 3f+1");
  auto A = random_polynomial(suite, secret, f, rng);
  auto B = random_polynomial(suite, suite.random_scalar(rng), f, rng);
  return share_polynomials(suite, std::move(A), std::move(B), n);
}

Sharing share_polynomials(const Suite &suite, Polynomial A, Polynomial B, uint32_t n) {
  if (A.empty() || A.size() != B.size()) throw ParameterError("polynomials must have equal, non-zero length");
  Sharing out;
  out.shares.reserve(n);
  for (uint32_t i = 1; i <= n; ++i) out.shares.push_back({i, evaluate(suite, A, i), evaluate(suite, B, i)});
  out.A = std::move(A);
  out.B = std::move(B);
  return out;
}

std::vector<Scalar> lagrange_at_zero(const Suite &suite, const std::vector<uint32_t> &indices) {
  std::set<uint32_t> seen;
  for (auto i : indices) {
    if (i == 0) throw ParameterError("interpolation index must be >= 1");
    if (!seen.insert(i).second) throw ParameterError("duplicate interpolation index");
  }
  std::vector<Scalar> out;
  out.reserve(indices.size());
  for (auto j : indices) {
    // λ_j = Π_{k≠j} k / (k - j)
    Scalar num = suite.scalar(1), den = suite.scalar(1);
    for (auto k : indices) {
      if (k == j) continue;
      num = suite.mul(num, suite.scalar(k));
      den = suite.mul(den, suite.sub(suite.scalar(k), suite.scalar(j)));
    }
    out.push_back(suite.mul(num, suite.inv(den)));
  }
  return out;
}

namespace {

template <class T>
std::vector<uint32_t> indices_of(const std::vector<std::pair<uint32_t, T>> &points, std::size_t degree) {
  if (points.size() != degree + 1) throw ParameterError("interpolation needs exactly degree+1 points");
  std::vector<uint32_t> idx;
  idx.reserve(points.size());
  for (const auto &p : points) idx.push_back(p.first);
  return idx;
}

}  // namespace

Scalar interpolate_at_zero(const Suite &suite, const std::vector<std::pair<uint32_t, Scalar>> &points,
                           std::size_t degree) {
  auto lambda = lagrange_at_zero(suite, indices_of(points, degree));
  Scalar acc = suite.scalar(0);
  for (std::size_t k = 0; k < points.size(); ++k) acc = suite.add(acc, suite.mul(lambda[k], points[k].second));
  return acc;
}

Point interpolate_at_zero(const Suite &suite, const std::vector<std::pair<uint32_t, Point>> &points,
                          std::size_t degree) {
  auto lambda = lagrange_at_zero(suite, indices_of(points, degree));
  Point acc = suite.identity();
  for (std::size_t k = 0; k < points.size(); ++k) acc = suite.add(acc, suite.mul(points[k].second, lambda[k]));
  return acc;
}

Commitment pedersen_commit(const Suite &suite, const Polynomial &A, const Polynomial &B) {
  if (A.size() != B.size()) throw ParameterError("pedersen_commit: degree mismatch");
  Commitment C;
  C.reserve(A.size());
  for (std::size_t j = 0; j < A.size(); ++j) C.push_back(suite.add(suite.mul_g1(A[j]), suite.mul_g2(B[j])));
  return C;
}

bool verify_opening(const Suite &suite, uint32_t i, const Scalar &a, const Scalar &b, const Commitment &C) {
  if (i == 0 || C.empty()) return false;
  auto lhs = suite.add(suite.mul_g1(a), suite.mul_g2(b));
  Point rhs = suite.identity();
  Scalar pw = suite.scalar(1);
  const auto is = suite.scalar(i);
  for (const auto &c : C) {
    rhs = suite.add(rhs, suite.mul(c, pw));
    pw = suite.mul(pw, is);
  }
  return lhs == rhs;
}

Bytes encode_commitment(const Suite &suite, const Commitment &C) {
  Writer w;
  w.u32(uint32_t(C.size()));
  for (const auto &c : C) suite.write(w, c);
  return std::move(w).take();
}

Commitment read_commitment(const Suite &suite, Reader &r, std::size_t max_len) {
  auto at = r.offset();
  auto len = r.u32();
  if (len == 0 || len > max_len) throw DecodeError("bad commitment length", at);
  Commitment C;
  C.reserve(len);
  for (uint32_t k = 0; k < len; ++k) C.push_back(suite.read_point(r));
  return C;
}

}  // namespace asyncbft::crypto
