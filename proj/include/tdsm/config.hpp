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

#ifndef TDSM_CONFIG_HPP
#define TDSM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tdsm/forward.hpp"
#include "tdsm/scene.hpp"

namespace tdsm {

struct ImagingParams {
  double sigma = 0.0;
  double T = 0.0;  // <= 0: whole record
  double rel_threshold = 0.3;
  double tfm_t0 = -1.0;  // < 0: the pulse delay t0
};

struct NoiseParams {
  double delta = 0.0;
  std::uint64_t seed = 1;
};

struct ApertureParams {
  bool set = false;
  double theta_min = 0.0;
  double theta_max = 2.0 * kPi;
};

struct OutputPaths {
  std::string traces;
  std::string grid;
  std::string pgm;
};

/// Everything one experiment needs, validated.
struct ExperimentConfig {
  Scene scene;
  Mode2D mode = Mode2D::TM;
  SolverParams solver;
  double duration = 2e-7;  // 2D simulated time, s
  BornParams born;
  ImagingParams imaging;
  NoiseParams noise;
  ApertureParams aperture;
  OutputPaths output;
};

/**
 * Flat "dotted.key = value" text; '#' starts a comment. Vectors are
 * whitespace-separated numbers with one entry per scene dimension.
 * Scatterers are numbered scene.scatterers.<k>.{center,size,eps_r} with
 * k = 0, 1, ... contiguous. Unknown or duplicated keys and malformed values
 * raise ConfigError naming the key and line.
 */
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Names of the bundled scene configs (the files under configs/ without ".cfg").
std::vector<std::string> preset_names();
/// Text of a bundled config; throws ConfigError for an unknown name.
std::string preset_text(const std::string& name);

}  // namespace tdsm

#endif  // TDSM_CONFIG_HPP
