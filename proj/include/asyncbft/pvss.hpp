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

#include <string>
#include <vector>

#include "asyncbft/crypto/keys.hpp"
#include "asyncbft/crypto/proofs.hpp"

namespace asyncbft::pvss {

using crypto::DleqProof;
using crypto::Point;
using crypto::Scalar;

// Aggregatable PVSS with contribution weights, without pairings.
//
// A dealer with secret s picks F of degree t-1 = 2f with F(0) = s and
// publishes v_j = F(j)·g1 and the encrypted share e_j = F(j)·ek_j, where
// ek_j = dk_j·g2. A fresh script carries one DLEQ proof per j tying e_j to
// v_j, and an attestation (C = s·g1, signature, proof of knowledge of log C)
// that becomes the weight tag. Aggregation adds v and e component-wise and
// concatenates attestations.
//
// Decrypting gives S_j = F(j)·g2, so the reconstructed secret is the group
// element s·g2. Without a pairing, e_j of an *aggregated* script cannot be
// checked against v_j; shares are checked against e_j only.

struct Attestation {
  PartyId dealer = 0;
  Point commitment;  // s_i·g1
  Bytes signature;   // over the commitment, bound to the instance
  DleqProof pok;     // knowledge of log_g1(commitment)
};

struct Script {
  std::vector<Point> v;
  std::vector<Point> enc;
  std::vector<DleqProof> proofs;  // one per party on fresh scripts, empty once aggregated
  std::vector<Attestation> attestations;
};

struct Share {
  PartyId index = 0;
  Point value;  // F(index)·g2
  DleqProof proof;
};

struct Params {
  uint32_t n = 0;
  uint32_t f = 0;
  std::string instance;

  uint32_t t() const { return 2 * f + 1; }
};

/// Throws ParameterError if keys are missing or n < 3f+1.
Script deal(const Params &p, const crypto::KeyDirectory &dir, PartyId dealer, const crypto::PartyKeys &keys,
            const Scalar &secret, Rng &rng);
Script deal(const Params &p, const crypto::KeyDirectory &dir, PartyId dealer, const crypto::PartyKeys &keys, Rng &rng);

bool vrfy_script(const Params &p, const crypto::KeyDirectory &dir, const Script &script);
std::vector<uint32_t> weights(const Params &p, const Script &script);

/// Decrypt party j's share. With the wrong keys the result fails vrfy_share.
Share get_share(const Params &p, const crypto::Suite &suite, PartyId j, const crypto::PartyKeys &keys,
                const Script &script);
bool vrfy_share(const Params &p, const crypto::KeyDirectory &dir, PartyId j, const Share &share, const Script &script);

/// Exactly t valid shares from distinct parties, else ParameterError.
Point agg_shares(const Params &p, const crypto::KeyDirectory &dir, const Script &script, const std::vector<Share> &shares);
/// `evidence` must be t valid shares interpolating to `secret`.
bool vrfy_secret(const Params &p, const crypto::KeyDirectory &dir, const Point &secret, const std::vector<Share> &evidence,
                 const Script &script);

/// Verifies both inputs; ParameterError if either is invalid.
Script agg_scripts(const Params &p, const crypto::KeyDirectory &dir, const Script &a, const Script &b);
/// No verification; for inputs the caller already checked.
Script aggregate(const crypto::Suite &suite, const std::vector<Script> &scripts);

Bytes encode(const crypto::Suite &suite, const Script &script);
Script decode(const crypto::Suite &suite, ByteSpan data, uint32_t n);
void write_share(const crypto::Suite &suite, Writer &w, const Share &s);
Share read_share(const crypto::Suite &suite, Reader &r);
Bytes script_hash(const crypto::Suite &suite, const Script &script);

}  // namespace asyncbft::pvss
