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

#include "asyncbft/protocol/reactor.hpp"

namespace asyncbft::protocol {

std::string child_id(const std::string &parent, char kind, uint32_t index) {
  return parent + '/' + kind + std::to_string(index);
}

std::string child_id(const std::string &parent, char kind) { return parent + '/' + kind; }

void write_sigset(Writer &w, const SigSet &s) {
  w.u32(uint32_t(s.size()));
  for (const auto &[p, sig] : s) w.u32(p).bytes(sig);
}

SigSet read_sigset(Reader &r, uint32_t n) {
  auto at = r.offset();
  auto len = r.u32();
  if (len > n) throw DecodeError("signature set larger than n", at);
  SigSet s;
  for (uint32_t k = 0; k < len; ++k) {
    auto p = r.u32();
    s.push_back({p, r.bytes(256)});
  }
  return s;
}

bool check_sigset(const Context &ctx, const std::string &instance, const SigSet &s, ByteSpan msg, uint32_t need) {
  if (s.size() != need) return false;
  std::set<PartyId> seen;
  for (const auto &[p, sig] : s) {
    if (!ctx.valid_party(p) || !seen.insert(p).second) return false;
    if (!ctx.verify(p, instance, msg, sig)) return false;
  }
  return true;
}

}  // namespace asyncbft::protocol
