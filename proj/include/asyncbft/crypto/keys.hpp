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

#include <memory>
#include <string_view>
#include <vector>

#include "asyncbft/crypto/suite.hpp"

namespace asyncbft {

/// 1-based party index.
using PartyId = uint32_t;

namespace crypto {

struct PublicKeys {
  Bytes sig_vk;
  Point vrf_pk;
  Point pvss_ek;  // dk·g2
};

struct PartyKeys {
  SigKeyPair sig;
  VrfKeyPair vrf;
  Scalar pvss_dk;
  Point pvss_ek;

  PublicKeys public_keys() const { return {sig.vk, vrf.pk, pvss_ek}; }
};

PartyKeys generate_party_keys(const Suite &suite, Rng &rng);

/// Bytes actually signed: the instance id is bound in so a signature from one
/// protocol instance never verifies in another.
Bytes signing_message(std::string_view instance, ByteSpan msg);

Bytes sign(const Suite &suite, const PartyKeys &keys, std::string_view instance, ByteSpan msg);
VrfOutput vrf_eval(const Suite &suite, const PartyKeys &keys, std::string_view instance, ByteSpan seed);

/// The bulletin board: every party's registered public keys, fixed before any
/// protocol starts. Corrupted parties may have registered anything.
class KeyDirectory {
 public:
  KeyDirectory(SuitePtr suite, std::vector<PublicKeys> keys);

  uint32_t n() const { return uint32_t(keys_.size()); }
  bool contains(PartyId p) const { return p >= 1 && p <= n(); }
  /// Throws ParameterError for an unknown party.
  const PublicKeys &at(PartyId p) const;
  const Suite &suite() const { return *suite_; }
  const SuitePtr &suite_ptr() const { return suite_; }

  bool verify_sig(PartyId p, std::string_view instance, ByteSpan msg, ByteSpan sig) const;
  bool vrf_verify(PartyId p, std::string_view instance, ByteSpan seed, const VrfOutput &out) const;

 private:
  SuitePtr suite_;
  std::vector<PublicKeys> keys_;
};

/// All key material of a simulated run. Tests and the simulator hand each
/// party only its own PartyKeys plus the shared directory.
class KeyRing {
 public:
  static KeyRing generate(SuitePtr suite, uint32_t n, Rng &rng);

  uint32_t n() const { return uint32_t(secrets_.size()); }
  const Suite &suite() const { return *suite_; }
  const SuitePtr &suite_ptr() const { return suite_; }
  const std::shared_ptr<const KeyDirectory> &directory() const { return dir_; }
  const PartyKeys &secret(PartyId p) const;

  /// Adversarial key registration: overwrite party p's keys before the run.
  void register_keys(PartyId p, PartyKeys keys);

  Bytes sign(PartyId p, std::string_view instance, ByteSpan msg) const;
  VrfOutput vrf_eval(PartyId p, std::string_view instance, ByteSpan seed) const;

 private:
  KeyRing(SuitePtr suite, std::vector<PartyKeys> secrets);
  void rebuild();

  SuitePtr suite_;
  std::vector<PartyKeys> secrets_;
  std::shared_ptr<const KeyDirectory> dir_;
};

}  // namespace crypto
}  // namespace asyncbft
