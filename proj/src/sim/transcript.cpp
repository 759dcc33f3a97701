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

#include "asyncbft/sim/transcript.hpp"

#include <fmt/format.h>

namespace asyncbft::sim {

namespace {

constexpr std::string_view kMagic = "ABFTTRC1";

void write_envelope(Writer &w, const Envelope &e) {
  w.u64(e.seq).u64(e.sent_event).u16(uint16_t(e.from)).u16(uint16_t(e.to)).u8(uint8_t(e.tag));
  w.str(e.instance).bytes(e.payload);
}

Envelope read_envelope(Reader &r) {
  Envelope e;
  e.seq = r.u64();
  e.sent_event = r.u64();
  e.from = r.u16();
  e.to = r.u16();
  auto at = r.offset();
  auto tag = r.u8();
  if (!valid_tag(tag)) throw DecodeError("unknown message tag", at);
  e.tag = Tag(tag);
  e.instance = r.str();
  e.payload = r.bytes();
  return e;
}

void write_counter(Writer &w, const Counter &c) { w.u64(c.messages).u64(c.bits); }
Counter read_counter(Reader &r) {
  Counter c;
  c.messages = r.u64();
  c.bits = r.u64();
  return c;
}

}  // namespace

Counter RunMetrics::subtree(std::string_view prefix) const {
  Counter out;
  for (auto it = per_instance.lower_bound(std::string(prefix)); it != per_instance.end(); ++it) {
    if (it->first.compare(0, prefix.size(), prefix) != 0) break;
    if (!within(it->first, prefix)) continue;
    out.messages += it->second.messages;
    out.bits += it->second.bits;
  }
  return out;
}

bool Event::operator==(const Event &o) const {
  const auto &a = env, &b = o.env;
  return kind == o.kind && step == o.step && a.seq == b.seq && a.sent_event == b.sent_event && a.from == b.from &&
         a.to == b.to && a.tag == b.tag && a.instance == b.instance && a.payload == b.payload;
}

Bytes encode_transcript(const Transcript &t) {
  Writer w;
  w.raw(to_bytes(kMagic));
  w.str(t.config);
  w.u64(t.events.size());
  for (const auto &e : t.events) {
    w.u8(e.kind).u64(e.step);
    write_envelope(w, e.env);
  }
  w.u32(uint32_t(t.outputs.size()));
  for (const auto &o : t.outputs) {
    w.u8(o ? 1 : 0);
    if (o) w.bytes(*o);
  }
  const auto &m = t.metrics;
  w.u64(m.messages).u64(m.bits).u32(m.rounds).u64(m.steps).u64(m.dropped);
  w.u32(uint32_t(m.per_instance.size()));
  for (const auto &[inst, c] : m.per_instance) {
    w.str(inst);
    write_counter(w, c);
  }
  return std::move(w).take();
}

Transcript decode_transcript(ByteSpan data) {
  Reader r(data);
  auto magic = r.raw(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw DecodeError("not a transcript (bad magic)", 0);
  Transcript t;
  t.config = r.str(1u << 20);
  auto count = r.u64();
  if (count > data.size()) throw DecodeError("event count exceeds input", r.offset() - 8);
  t.events.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    Event e;
    auto at = r.offset();
    auto kind = r.u8();
    if (kind != Event::Deliver && kind != Event::Drop) throw DecodeError("unknown event kind", at);
    e.kind = Event::Kind(kind);
    e.step = r.u64();
    e.env = read_envelope(r);
    t.events.push_back(std::move(e));
  }
  auto np = r.u32();
  if (np > 1024) throw DecodeError("party count too large", r.offset() - 4);
  for (uint32_t i = 0; i < np; ++i) {
    auto at = r.offset();
    auto has = r.u8();
    if (has > 1) throw DecodeError("bad output flag", at);
    t.outputs.push_back(has ? std::optional<Bytes>(r.bytes()) : std::nullopt);
  }
  auto &m = t.metrics;
  m.messages = r.u64();
  m.bits = r.u64();
  m.rounds = r.u32();
  m.steps = r.u64();
  m.dropped = r.u64();
  auto ni = r.u32();
  for (uint32_t i = 0; i < ni; ++i) {
    auto inst = r.str();
    m.per_instance[inst] = read_counter(r);
  }
  r.expect_done();
  return t;
}

std::string render_text(const Transcript &t) {
  std::string out = fmt::format("# config {}\n", t.config);
  for (const auto &e : t.events) {
    const auto &v = e.env;
    out += fmt::format("{} {:>7} seq={} sent@{} {}->{} {} {} len={} {}\n", e.kind == Event::Deliver ? "deliver" : "drop",
                       e.step, v.seq, v.sent_event, v.from, v.to, v.instance, tag_name(v.tag), v.payload.size(),
                       to_hex(ByteSpan(v.payload).first(std::min<std::size_t>(v.payload.size(), 16))));
  }
  for (std::size_t p = 0; p < t.outputs.size(); ++p) {
    out += fmt::format("# output party {}: {}\n", p + 1, t.outputs[p] ? to_hex(*t.outputs[p]) : "none");
  }
  out += fmt::format("# metrics messages={} bits={} rounds={} steps={} dropped={}\n", t.metrics.messages,
                     t.metrics.bits, t.metrics.rounds, t.metrics.steps, t.metrics.dropped);
  return out;
}

std::vector<std::string> diff_transcripts(const Transcript &a, const Transcript &b) {
  std::vector<std::string> out;
  if (a.config != b.config) out.push_back("config differs");
  auto n = std::min(a.events.size(), b.events.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a.events[i] == b.events[i])) {
      const auto &x = a.events[i].env;
      out.push_back(fmt::format("first divergence at event {} (step {}): expected {} {}->{} {} seq={}", i,
                                a.events[i].step, tag_name(x.tag), x.from, x.to, x.instance, x.seq));
      break;
    }
  }
  if (a.events.size() != b.events.size())
    out.push_back(fmt::format("event count differs: expected {}, got {}", a.events.size(), b.events.size()));
  if (a.outputs != b.outputs) out.push_back("outputs differ");
  if (!(a.metrics == b.metrics)) out.push_back("metrics differ");
  return out;
}

}  // namespace asyncbft::sim
