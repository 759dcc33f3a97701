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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asyncbft/sim/message.hpp"

namespace asyncbft::sim {

struct Counter {
  uint64_t messages = 0;
  uint64_t bits = 0;
  bool operator==(const Counter &) const = default;
};

/// Communication among honest parties only; envelopes from or to a corrupted
/// party are not counted.
struct RunMetrics {
  uint64_t messages = 0;
  uint64_t bits = 0;
  uint32_t rounds = 0;
  uint64_t steps = 0;  // delivery events, any sender
  uint64_t dropped = 0;
  std::map<std::string, Counter> per_instance;

  /// Sum over an instance subtree.
  Counter subtree(std::string_view prefix) const;
  bool operator==(const RunMetrics &) const = default;
};

struct Event {
  enum Kind : uint8_t { Deliver = 1, Drop = 2 };
  Kind kind = Deliver;
  uint64_t step = 0;
  Envelope env;
  bool operator==(const Event &o) const;
};

struct Transcript {
  std::string config;  // JSON describing how to re-run
  std::vector<Event> events;
  std::vector<std::optional<Bytes>> outputs;  // index p-1
  RunMetrics metrics;
};

Bytes encode_transcript(const Transcript &t);
/// DecodeError carries the offset of the first bad byte.
Transcript decode_transcript(ByteSpan data);
std::string render_text(const Transcript &t);

/// Empty when equal; otherwise one line per difference class, starting with
/// the first diverging event.
std::vector<std::string> diff_transcripts(const Transcript &expected, const Transcript &actual);

}  // namespace asyncbft::sim
