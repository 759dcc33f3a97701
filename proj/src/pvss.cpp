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

#include "asyncbft/pvss.hpp"

#include <set>

#include "asyncbft/crypto/polynomial.hpp"

namespace asyncbft::pvss {

using crypto::KeyDirectory;
using crypto::Suite;

namespace {

Bytes ctx(const Params &p, std::string_view what, uint32_t a, uint32_t b = 0) {
  Writer w;
  w.str("pvss").str(p.instance).str(what).u32(a).u32(b);
  return std::move(w).take();
}

Bytes attest_message(const Suite &suite, const Point &c) {
  Writer w;
  w.str("pvss-attest");
  suite.write(w, c);
  return std::move(w).take();
}

void check_params(const Params &p, const KeyDirectory &dir) {
  if (p.n < 3 * p.f + 1) throw ParameterError("pvss requires n >= 3f+1");
  if (dir.n() != p.n) throw ParameterError("pvss: key directory does not cover all parties");
}

// Σ_j c_j·v_j for a random dual codeword c vanishes iff v lies on a polynomial
// of degree < t. Coefficients come from hashing v (Fiat-Shamir).
bool low_degree(const Params &p, const Suite &suite, const std::vector<Point> &v) {
  const uint32_t n = p.n, t = p.t();
  if (n <= t) return true;
  Writer seed;
  seed.str("pvss-ldt").str(p.instance);
  for (const auto &x : v) suite.write(seed, x);
  const auto base = std::move(seed).take();
  crypto::Polynomial m;
  for (uint32_t k = 0; k < n - t; ++k) {
    Writer w;
    w.raw(base).u32(k);
    m.push_back(suite.hash_to_scalar(w.data()));
  }
  Point acc = suite.identity();
  for (uint32_t j = 1; j <= n; ++j) {
    Scalar den = suite.scalar(1);
    for (uint32_t k = 1; k <= n; ++k) {
      if (k != j) den = suite.mul(den, suite.sub(suite.scalar(j), suite.scalar(k)));
    }
    auto c = suite.mul(crypto::evaluate(suite, m, j), suite.inv(den));
    acc = suite.add(acc, suite.mul(v[j - 1], c));
  }
  return acc == suite.identity();
}

Point committed_secret(const Params &p, const Suite &suite, const std::vector<Point> &v) {
  std::vector<std::pair<uint32_t, Point>> pts;
  for (uint32_t j = 1; j <= p.t(); ++j) pts.push_back({j, v[j - 1]});
  return crypto::interpolate_at_zero(suite, pts, p.t() - 1);
}

bool check_attestation(const Params &p, const KeyDirectory &dir, const Attestation &a) {
  const auto &suite = dir.suite();
  if (!dir.contains(a.dealer)) return false;
  if (!dir.verify_sig(a.dealer, p.instance, attest_message(suite, a.commitment), a.signature)) return false;
  return crypto::schnorr_verify(suite, ctx(p, "pok", a.dealer), suite.g1(), a.commitment, a.pok);
}

}  // namespace

Script deal(const Params &p, const KeyDirectory &dir, PartyId dealer, const crypto::PartyKeys &keys,
            const Scalar &secret, Rng &rng) {
  check_params(p, dir);
  if (!dir.contains(dealer)) throw ParameterError("pvss deal: unknown dealer");
  const auto &suite = dir.suite();
  auto F = crypto::random_polynomial(suite, secret, p.t() - 1, rng);
  Script s;
  s.v.reserve(p.n);
  s.enc.reserve(p.n);
  s.proofs.reserve(p.n);
  for (uint32_t j = 1; j <= p.n; ++j) {
    auto fj = crypto::evaluate(suite, F, j);
    const auto &ek = dir.at(j).pvss_ek;
    s.v.push_back(suite.mul_g1(fj));
    s.enc.push_back(suite.mul(ek, fj));
    s.proofs.push_back(crypto::dleq_prove(suite, ctx(p, "enc", dealer, j), suite.g1(), s.v.back(), ek, s.enc.back(), fj));
  }
  Attestation a;
  a.dealer = dealer;
  a.commitment = suite.mul_g1(secret);
  a.signature = crypto::sign(suite, keys, p.instance, attest_message(suite, a.commitment));
  a.pok = crypto::schnorr_prove(suite, ctx(p, "pok", dealer), suite.g1(), a.commitment, secret);
  s.attestations.push_back(std::move(a));
  return s;
}

Script deal(const Params &p, const KeyDirectory &dir, PartyId dealer, const crypto::PartyKeys &keys, Rng &rng) {
  auto secret = dir.suite().random_scalar(rng);
  return deal(p, dir, dealer, keys, secret, rng);
}

bool vrfy_script(const Params &p, const KeyDirectory &dir, const Script &s) {
  if (p.n < 3 * p.f + 1 || dir.n() != p.n) return false;
  const auto &suite = dir.suite();
  if (s.v.size() != p.n || s.enc.size() != p.n || s.attestations.empty()) return false;
  const bool fresh = s.attestations.size() == 1;
  if (s.proofs.size() != (fresh ? p.n : 0)) return false;
  if (!low_degree(p, suite, s.v)) return false;

  Point sum = suite.identity();
  for (const auto &a : s.attestations) {
    if (!check_attestation(p, dir, a)) return false;
    sum = suite.add(sum, a.commitment);
  }
  if (sum != committed_secret(p, suite, s.v)) return false;

  if (fresh) {
    const auto dealer = s.attestations[0].dealer;
    for (uint32_t j = 1; j <= p.n; ++j) {
      if (!crypto::dleq_verify(suite, ctx(p, "enc", dealer, j), suite.g1(), s.v[j - 1], dir.at(j).pvss_ek,
                               s.enc[j - 1], s.proofs[j - 1]))
        return false;
    }
  }
  return true;
}

std::vector<uint32_t> weights(const Params &p, const Script &s) {
  std::vector<uint32_t> w(p.n, 0);
  for (const auto &a : s.attestations) {
    if (a.dealer >= 1 && a.dealer <= p.n) w[a.dealer - 1]++;
  }
  return w;
}

Share get_share(const Params &p, const Suite &suite, PartyId j, const crypto::PartyKeys &keys, const Script &s) {
  if (j < 1 || j > p.n || s.enc.size() != p.n) throw ParameterError("pvss get_share: bad index or script");
  Share sh;
  sh.index = j;
  sh.value = suite.mul(s.enc[j - 1], suite.inv(keys.pvss_dk));
  // ek = dk·g2 and enc_j = dk·S_j
  sh.proof = crypto::dleq_prove(suite, ctx(p, "dec", j), suite.g2(), keys.pvss_ek, sh.value, s.enc[j - 1], keys.pvss_dk);
  return sh;
}

bool vrfy_share(const Params &p, const KeyDirectory &dir, PartyId j, const Share &sh, const Script &s) {
  if (j < 1 || j > p.n || sh.index != j || s.enc.size() != p.n || !dir.contains(j)) return false;
  const auto &suite = dir.suite();
  return crypto::dleq_verify(suite, ctx(p, "dec", j), suite.g2(), dir.at(j).pvss_ek, sh.value, s.enc[j - 1], sh.proof);
}

Point agg_shares(const Params &p, const KeyDirectory &dir, const Script &s, const std::vector<Share> &shares) {
  if (shares.size() != p.t()) throw ParameterError("agg_shares needs exactly 2f+1 shares");
  std::vector<std::pair<uint32_t, Point>> pts;
  for (const auto &sh : shares) {
    if (!vrfy_share(p, dir, sh.index, sh, s)) throw ParameterError("agg_shares: invalid share");
    pts.push_back({sh.index, sh.value});
  }
  return crypto::interpolate_at_zero(dir.suite(), pts, p.t() - 1);  // rejects duplicates
}

bool vrfy_secret(const Params &p, const KeyDirectory &dir, const Point &secret, const std::vector<Share> &evidence,
                 const Script &s) {
  try {
    return agg_shares(p, dir, s, evidence) == secret;
  } catch (const ParameterError &) {
    return false;
  }
}

Script aggregate(const Suite &suite, const std::vector<Script> &scripts) {
  if (scripts.empty()) throw ParameterError("aggregate of no scripts");
  if (scripts.size() == 1) return scripts[0];
  Script out;
  const auto n = scripts[0].v.size();
  out.v.assign(n, suite.identity());
  out.enc.assign(n, suite.identity());
  for (const auto &s : scripts) {
    if (s.v.size() != n || s.enc.size() != n) throw ParameterError("aggregate: size mismatch");
    for (std::size_t j = 0; j < n; ++j) {
      out.v[j] = suite.add(out.v[j], s.v[j]);
      out.enc[j] = suite.add(out.enc[j], s.enc[j]);
    }
    out.attestations.insert(out.attestations.end(), s.attestations.begin(), s.attestations.end());
  }
  return out;
}

Script agg_scripts(const Params &p, const KeyDirectory &dir, const Script &a, const Script &b) {
  if (!vrfy_script(p, dir, a) || !vrfy_script(p, dir, b)) throw ParameterError("agg_scripts: invalid input script");
  return aggregate(dir.suite(), {a, b});
}

Bytes encode(const Suite &suite, const Script &s) {
  Writer w;
  w.u32(uint32_t(s.v.size()));
  for (const auto &x : s.v) suite.write(w, x);
  for (const auto &x : s.enc) suite.write(w, x);
  w.u32(uint32_t(s.proofs.size()));
  for (const auto &pr : s.proofs) crypto::write_proof(suite, w, pr);
  w.u32(uint32_t(s.attestations.size()));
  for (const auto &a : s.attestations) {
    w.u32(a.dealer);
    suite.write(w, a.commitment);
    w.bytes(a.signature);
    crypto::write_proof(suite, w, a.pok);
  }
  return std::move(w).take();
}

Script decode(const Suite &suite, ByteSpan data, uint32_t n) {
  Reader r(data);
  Script s;
  auto at = r.offset();
  if (r.u32() != n) throw DecodeError("pvss script has wrong party count", at);
  for (uint32_t j = 0; j < n; ++j) s.v.push_back(suite.read_point(r));
  for (uint32_t j = 0; j < n; ++j) s.enc.push_back(suite.read_point(r));
  at = r.offset();
  auto np = r.u32();
  if (np != 0 && np != n) throw DecodeError("pvss script has wrong proof count", at);
  for (uint32_t j = 0; j < np; ++j) s.proofs.push_back(crypto::read_proof(suite, r));
  at = r.offset();
  auto na = r.u32();
  if (na > 64 * n) throw DecodeError("pvss script has too many attestations", at);
  for (uint32_t k = 0; k < na; ++k) {
    Attestation a;
    a.dealer = r.u32();
    a.commitment = suite.read_point(r);
    a.signature = r.bytes(256);
    a.pok = crypto::read_proof(suite, r);
    s.attestations.push_back(std::move(a));
  }
  r.expect_done();
  return s;
}

void write_share(const Suite &suite, Writer &w, const Share &s) {
  w.u32(s.index);
  suite.write(w, s.value);
  crypto::write_proof(suite, w, s.proof);
}

Share read_share(const Suite &suite, Reader &r) {
  Share s;
  s.index = r.u32();
  s.value = suite.read_point(r);
  s.proof = crypto::read_proof(suite, r);
  return s;
}

Bytes script_hash(const Suite &suite, const Script &s) { return suite.hash(encode(suite, s)); }

}  // namespace asyncbft::pvss
