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

#include "asyncbft/protocol/rbc.hpp"

namespace asyncbft::protocol {

Rbc::Rbc(Context ctx, std::string instance, PartyId sender, std::optional<Bytes> input)
    : ctx_{std::move(ctx)}, id_{std::move(instance)}, sender_{sender}, input_{std::move(input)} {
  if (!ctx_.valid_party(sender_)) throw ParameterError("rbc sender out of range");
  if (input_ && ctx_.me != sender_) throw ParameterError("only the sender has an rbc input");
}

Step<Bytes> Rbc::start() {
  started_ = true;
  Step<Bytes> st;
  if (input_ && !sent_) {
    sent_ = true;
    st.multicast(ctx_.n, id_, Tag::RbcSend, *input_);
  }
  return st;
}

Step<Bytes> Rbc::input(Bytes value) {
  if (ctx_.me != sender_) throw ParameterError("only the sender has an rbc input");
  if (input_) throw ParameterError("rbc input already set");
  input_ = std::move(value);
  return started_ ? start() : Step<Bytes>{};
}

Step<Bytes> Rbc::handle(const Envelope &env) {
  Step<Bytes> st;
  if (done_) return st;
  switch (env.tag) {
    case Tag::RbcSend: {
      if (env.from != sender_ || got_send_) break;
      got_send_ = true;
      if (!echoed_) {
        echoed_ = true;
        st.multicast(ctx_.n, id_, Tag::RbcEcho, env.payload);
      }
      break;
    }
    case Tag::RbcEcho: {
      if (!echo_from_.insert(env.from).second) break;
      auto h = ctx_.S().hash(env.payload);
      values_.try_emplace(h, env.payload);
      tally_[h].echo.insert(env.from);
      maybe_progress(h, st);
      break;
    }
    case Tag::RbcReady: {
      if (env.payload.size() != ctx_.S().hash_bytes() || !ready_from_.insert(env.from).second) break;
      tally_[env.payload].ready.insert(env.from);
      maybe_progress(env.payload, st);
      break;
    }
    default:
      break;
  }
  // A value may have arrived after the Ready quorum did.
  if (!done_) {
    for (const auto &[h, t] : tally_) {
      if (t.ready.size() >= ctx_.quorum() && values_.contains(h)) {
        done_ = true;
        st.output = values_.at(h);
        break;
      }
    }
  }
  return st;
}

void Rbc::maybe_progress(const Bytes &h, Step<Bytes> &st) {
  const auto &t = tally_[h];
  if (!readied_ && (t.echo.size() >= ctx_.quorum() || t.ready.size() >= ctx_.f + 1)) {
    readied_ = true;
    st.multicast(ctx_.n, id_, Tag::RbcReady, h);
  }
}

}  // namespace asyncbft::protocol
