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

#ifndef TDSM_COMMON_HPP
#define TDSM_COMMON_HPP

#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace tdsm {

/// Points and vectors are always stored in 3D; 2D problems keep z = 0.
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;

/// Raised for malformed or inconsistent user input (config, scene invariants).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the forward solvers (CFL violation, instability, bad placement).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a trace or grid file does not parse or does not match the config.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Worker count for parallel loops: TDSM_THREADS if set and positive, else
/// the OpenMP default.
int worker_count();

/// Runs body(i) for i in [0, n). Iterations must be independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tdsm

#endif  // TDSM_COMMON_HPP
