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

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "asyncbft/bytes.hpp"

namespace asyncbft {

/// Deterministic ChaCha20 keystream. Every random choice in a run flows from
/// one of these, so a (seed, config) pair fully determines the execution.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed);
  explicit Rng(std::span<const uint8_t, 32> key);

  /// Independent child stream bound to `label`.
  Rng fork(std::string_view label) const;
  Rng fork(uint64_t label) const;

  void fill(std::span<uint8_t> out);
  uint64_t next_u64();
  /// Uniform in [0, bound) by rejection; bound must be non-zero.
  uint64_t uniform(uint64_t bound);
  double unit();

  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  void refill();

  std::array<uint8_t, 32> key_{};
  uint64_t block_ = 0;
  std::array<uint8_t, 256> buf_{};
  std::size_t pos_ = buf_.size();
};

}  // namespace asyncbft
