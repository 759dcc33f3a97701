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

#include "asyncbft/crypto/proofs.hpp"

namespace asyncbft::crypto {
namespace {

Scalar challenge(const Suite &suite, std::string_view tag, ByteSpan context, std::initializer_list<const Point *> pts) {
  Writer w;
  w.str(tag).bytes(context);
  for (const auto *p : pts) suite.write(w, *p);
  return suite.hash_to_scalar(w.data());
}

Scalar nonce(const Suite &suite, ByteSpan context, const Scalar &x, std::initializer_list<const Point *> pts) {
  Writer w;
  w.str("nonce").bytes(context);
  suite.write(w, x);
  for (const auto *p : pts) suite.write(w, *p);
  return suite.hash_to_scalar(w.data());
}

}  // namespace

DleqProof dleq_prove(const Suite &suite, ByteSpan context, const Point &g, const Point &x_pt, const Point &h,
                     const Point &y_pt, const Scalar &x) {
  auto k = nonce(suite, context, x, {&g, &x_pt, &h, &y_pt});
  auto a = suite.mul(g, k);
  auto b = suite.mul(h, k);
  auto c = challenge(suite, "dleq", context, {&g, &x_pt, &h, &y_pt, &a, &b});
  return {c, suite.sub(k, suite.mul(c, x))};
}

bool dleq_verify(const Suite &suite, ByteSpan context, const Point &g, const Point &x_pt, const Point &h,
                 const Point &y_pt, const DleqProof &proof) {
  // k·g = s·g + c·X when s = k - c·x
  auto a = suite.add(suite.mul(g, proof.s), suite.mul(x_pt, proof.c));
  auto b = suite.add(suite.mul(h, proof.s), suite.mul(y_pt, proof.c));
  return challenge(suite, "dleq", context, {&g, &x_pt, &h, &y_pt, &a, &b}) == proof.c;
}

DleqProof schnorr_prove(const Suite &suite, ByteSpan context, const Point &g, const Point &x_pt, const Scalar &x) {
  auto k = nonce(suite, context, x, {&g, &x_pt});
  auto a = suite.mul(g, k);
  auto c = challenge(suite, "schnorr", context, {&g, &x_pt, &a});
  return {c, suite.sub(k, suite.mul(c, x))};
}

bool schnorr_verify(const Suite &suite, ByteSpan context, const Point &g, const Point &x_pt, const DleqProof &proof) {
  auto a = suite.add(suite.mul(g, proof.s), suite.mul(x_pt, proof.c));
  return challenge(suite, "schnorr", context, {&g, &x_pt, &a}) == proof.c;
}

void write_proof(const Suite &suite, Writer &w, const DleqProof &p) {
  suite.write(w, p.c);
  suite.write(w, p.s);
}

DleqProof read_proof(const Suite &suite, Reader &r) {
  DleqProof p;
  p.c = suite.read_scalar(r);
  p.s = suite.read_scalar(r);
  return p;
}

}  // namespace asyncbft::crypto
