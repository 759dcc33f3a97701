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

#include "asyncbft/crypto/keys.hpp"

namespace asyncbft::crypto {

PartyKeys generate_party_keys(const Suite &suite, Rng &rng) {
  PartyKeys k;
  k.sig = suite.sig_keygen(rng);
  k.vrf = suite.vrf_keygen(rng);
  do {
    k.pvss_dk = suite.random_scalar(rng);
  } while (suite.is_zero(k.pvss_dk));
  k.pvss_ek = suite.mul_g2(k.pvss_dk);
  return k;
}

Bytes signing_message(std::string_view instance, ByteSpan msg) {
  Writer w;
  w.str(instance).raw(msg);
  return std::move(w).take();
}

Bytes sign(const Suite &suite, const PartyKeys &keys, std::string_view instance, ByteSpan msg) {
  return suite.sign(keys.sig.sk, signing_message(instance, msg));
}

VrfOutput vrf_eval(const Suite &suite, const PartyKeys &keys, std::string_view instance, ByteSpan seed) {
  return suite.vrf_eval(keys.vrf, signing_message(instance, seed));
}

KeyDirectory::KeyDirectory(SuitePtr suite, std::vector<PublicKeys> keys) : suite_{std::move(suite)}, keys_{std::move(keys)} {
  if (!suite_) throw ParameterError("KeyDirectory needs a suite");
}

const PublicKeys &KeyDirectory::at(PartyId p) const {
  if (!contains(p)) throw ParameterError("unknown party " + std::to_string(p));
  return keys_[p - 1];
}

bool KeyDirectory::verify_sig(PartyId p, std::string_view instance, ByteSpan msg, ByteSpan sig) const {
  return suite_->verify(at(p).sig_vk, signing_message(instance, msg), sig);
}

bool KeyDirectory::vrf_verify(PartyId p, std::string_view instance, ByteSpan seed, const VrfOutput &out) const {
  if (out.r.size() != suite_->hash_bytes()) return false;
  return suite_->vrf_verify(at(p).vrf_pk, signing_message(instance, seed), out);
}

KeyRing::KeyRing(SuitePtr suite, std::vector<PartyKeys> secrets) : suite_{std::move(suite)}, secrets_{std::move(secrets)} {
  rebuild();
}

KeyRing KeyRing::generate(SuitePtr suite, uint32_t n, Rng &rng) {
  if (n == 0) throw ParameterError("KeyRing needs at least one party");
  std::vector<PartyKeys> s;
  s.reserve(n);
  for (uint32_t i = 1; i <= n; ++i) {
    auto sub = rng.fork(i);
    s.push_back(generate_party_keys(*suite, sub));
  }
  return KeyRing(std::move(suite), std::move(s));
}

const PartyKeys &KeyRing::secret(PartyId p) const {
  if (p < 1 || p > n()) throw ParameterError("unknown party " + std::to_string(p));
  return secrets_[p - 1];
}

void KeyRing::register_keys(PartyId p, PartyKeys keys) {
  if (p < 1 || p > n()) throw ParameterError("unknown party " + std::to_string(p));
  secrets_[p - 1] = std::move(keys);
  rebuild();
}

Bytes KeyRing::sign(PartyId p, std::string_view instance, ByteSpan msg) const {
  return crypto::sign(*suite_, secret(p), instance, msg);
}

VrfOutput KeyRing::vrf_eval(PartyId p, std::string_view instance, ByteSpan seed) const {
  return crypto::vrf_eval(*suite_, secret(p), instance, seed);
}

void KeyRing::rebuild() {
  std::vector<PublicKeys> pub;
  pub.reserve(secrets_.size());
  for (const auto &s : secrets_) pub.push_back(s.public_keys());
  dir_ = std::make_shared<const KeyDirectory>(suite_, std::move(pub));
}

}  // namespace asyncbft::crypto
