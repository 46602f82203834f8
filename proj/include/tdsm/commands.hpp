/*
 * Copyright (c) 2026 The tdsm Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TDSM_COMMANDS_HPP
#define TDSM_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace tdsm {

/// Process exit codes of the tdsm tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,     // malformed config, unknown suite, empty aperture
  kExitSolver = 2,     // CFL violation, instability, bad placement
  kExitFormat = 3,     // trace file unreadable or inconsistent with the config
  kExitChecks = 4,     // verify: some check failed
  kExitIo = 5,         // output could not be written
};

struct CommandOptions {
  std::string command;  // simulate, image, tfm-image, aperture, verify, spectrum
  std::string config;   // path; verify falls back to the bundled TM scene
  std::string traces;   // overrides output.traces as the input of image commands
  std::string out;      // overrides the primary output path
  std::string method = "dsm";
  std::string suite = "all";
  std::optional<double> delta;
  std::optional<std::uint64_t> seed;
  std::optional<double> theta_min;
  std::optional<double> theta_max;
};

/// Runs one command, printing results to out and diagnostics to err.
/// Every failure is mapped to an ExitCode; nothing is thrown.
int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace tdsm

#endif  // TDSM_COMMANDS_HPP
