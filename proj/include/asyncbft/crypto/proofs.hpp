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

#include "asyncbft/crypto/suite.hpp"

namespace asyncbft::crypto {

// Fiat-Shamir sigma proofs. Nonces are derived from the witness and statement
// (RFC 6979 style) so proving needs no randomness source.

struct DleqProof {
  Scalar c;
  Scalar s;
  bool operator==(const DleqProof &) const = default;
};

/// Proves log_g(x_pt) == log_h(y_pt) == x.
DleqProof dleq_prove(const Suite &suite, ByteSpan context, const Point &g, const Point &x_pt, const Point &h,
                     const Point &y_pt, const Scalar &x);
bool dleq_verify(const Suite &suite, ByteSpan context, const Point &g, const Point &x_pt, const Point &h,
                 const Point &y_pt, const DleqProof &proof);

/// Proof of knowledge of log_g(x_pt).
DleqProof schnorr_prove(const Suite &suite, ByteSpan context, const Point &g, const Point &x_pt, const Scalar &x);
bool schnorr_verify(const Suite &suite, ByteSpan context, const Point &g, const Point &x_pt, const DleqProof &proof);

void write_proof(const Suite &suite, Writer &w, const DleqProof &p);
DleqProof read_proof(const Suite &suite, Reader &r);

}  // namespace asyncbft::crypto
