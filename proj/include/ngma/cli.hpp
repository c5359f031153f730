// ngma-sim: rate-level simulator for multi-antenna NOMA/SDMA multiple access
// Copyright (C) 2026 The ngma-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NGMA_CLI_HPP
#define NGMA_CLI_HPP

#include <ostream>

namespace ngma
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_infeasible = 3;

/// Entry point of the ngma command-line tool. Results go to --out (written
/// atomically) or to `out`; diagnostics are single lines on `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace ngma

#endif
