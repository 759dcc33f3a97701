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

// Runs every acceptance preset and prints one line per criterion.
// Exit status 1 if any criterion fails.

#include <fmt/format.h>

#include <cstring>

#include "asyncbft/harness/presets.hpp"

using namespace asyncbft::harness;

int main(int argc, char **argv) {
  bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
  int failed = 0;
  int id = 0;
  for (const auto &name : preset_names()) {
    ++id;
    auto rep = run_preset(name);
    std::string why;
    for (const auto &c : rep.checks) {
      if (verbose || !c.pass) fmt::print("    [{}] {}: {}\n", c.pass ? "pass" : "FAIL", c.name, c.detail);
      if (!c.pass) why += (why.empty() ? "" : "; ") + c.name;
    }
    fmt::print("criterion {:>2} {} {} ({:.1f}s){}\n", id, rep.pass() ? "PASS" : "FAIL", rep.title, rep.seconds,
               why.empty() ? "" : " -- " + why);
    std::fflush(stdout);
    failed += !rep.pass();
  }
  fmt::print("{} of {} criteria passed\n", id - failed, id);
  return failed ? 1 : 0;
}
