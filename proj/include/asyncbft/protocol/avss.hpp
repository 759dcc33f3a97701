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

#include "asyncbft/crypto/polynomial.hpp"
#include "asyncbft/protocol/reactor.hpp"

namespace asyncbft::protocol {

struct AvssConfig {
  /// Encrypt with a hash of the key (any secret length). Off: key XOR secret,
  /// which needs a secret exactly one scalar wide.
  bool random_oracle = true;
};

/// What the sharing phase leaves a party with. The share and commitment are
/// missing at parties that never saw a consistent Cipher.
struct AvssShOutput {
  Bytes h;  // hash of the dealer's commitment
  Bytes c;  // encrypted secret
  std::optional<crypto::Scalar> sh_a, sh_b;
  std::optional<crypto::Commitment> cmt;
};
Bytes encode_sh_output(const crypto::Suite &suite, const AvssShOutput &o);
AvssShOutput decode_sh_output(const crypto::Suite &suite, ByteSpan data);

/// Hash of a commitment vector, as carried in Stored/Cipher/Echo/Ready.
Bytes commitment_hash(const crypto::Suite &suite, const crypto::Commitment &C);
/// key -> pad of len bytes (random-oracle mode) or the raw scalar.
Bytes avss_pad(const crypto::Suite &suite, const crypto::Scalar &key, std::size_t len, const AvssConfig &cfg);

class AvssSh {
 public:
  using Output = AvssShOutput;

  /// The dealer passes its secret; everyone else passes nullopt.
  AvssSh(Context ctx, std::string instance, PartyId dealer, std::optional<Bytes> secret, AvssConfig cfg = {});

  Step<Output> start();
  Step<Output> handle(const Envelope &env);

  const std::string &instance() const { return id_; }
  PartyId dealer() const { return dealer_; }

 private:
  void on_cipher(const Envelope &env, Step<Output> &st);
  void on_vote(const Envelope &env, Step<Output> &st);

  Context ctx_;
  std::string id_;
  PartyId dealer_;
  std::optional<Bytes> secret_;
  AvssConfig cfg_;

  // dealer
  std::optional<crypto::Scalar> key_;
  Bytes my_h_;
  SigSet stored_;
  std::set<PartyId> stored_from_;
  bool cipher_sent_ = false;

  // participant
  bool flag_ = false, got_keyshare_ = false, got_cipher_ = false, echoed_ = false, readied_ = false, done_ = false;
  crypto::Commitment c_prime_;
  crypto::Scalar a_, b_;
  std::optional<Envelope> held_cipher_;
  AvssShOutput result_;
  std::map<Bytes, std::set<PartyId>> echo_, ready_;
  std::set<PartyId> echo_from_, ready_from_;
};

class AvssRec {
 public:
  using Output = Bytes;

  AvssRec(Context ctx, std::string instance, AvssShOutput input, AvssConfig cfg = {});

  Step<Bytes> start();
  Step<Bytes> handle(const Envelope &env);
  const std::string &instance() const { return id_; }

 private:
  Context ctx_;
  std::string id_;
  AvssShOutput in_;
  AvssConfig cfg_;
  std::set<PartyId> keyrec_from_, key_from_;
  std::vector<std::pair<uint32_t, crypto::Scalar>> phi_;
  bool key_sent_ = false, done_ = false;
  std::map<Bytes, uint32_t> keys_;
};

/// Sharing followed immediately by reconstruction under "<instance>/r".
class AvssPipeline {
 public:
  struct Output {
    AvssShOutput sh;
    Bytes secret;
  };

  AvssPipeline(Context ctx, std::string instance, PartyId dealer, std::optional<Bytes> secret, AvssConfig cfg = {});
  Step<Output> start();
  Step<Output> handle(const Envelope &env);

  const std::optional<AvssShOutput> &sh_output() const { return sh_out_; }

 private:
  void take(Step<Bytes> rs, Step<Output> &st);

  Context ctx_;
  std::string id_, rec_id_;
  AvssConfig cfg_;
  AvssSh sh_;
  std::optional<AvssShOutput> sh_out_;
  std::unique_ptr<AvssRec> rec_;
  std::vector<Envelope> held_;
  bool done_ = false;
};
Bytes encode_pipeline_output(const AvssPipeline::Output &o);

}  // namespace asyncbft::protocol
