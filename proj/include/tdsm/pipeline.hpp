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

#ifndef TDSM_PIPELINE_HPP
#define TDSM_PIPELINE_HPP

#include <limits>
#include <string>
#include <vector>

#include "tdsm/config.hpp"
#include "tdsm/forward.hpp"
#include "tdsm/imaging.hpp"
#include "tdsm/xform.hpp"

namespace tdsm {

/// 1 for TM, 2 for TE, 3 for 3D scenes.
int trace_components(const ExperimentConfig& config);

struct SimulationResult {
  TraceSet traces;
  bool size_warning = false;  // 3D only: some box is not small against the probing wavelength
};

/// Full-wave 2D run or 3D Born synthesis, depending on the scene dimension.
SimulationResult simulate(const ExperimentConfig& config);

/// imaging.T, or the whole record when it is not set.
double imaging_time(const ExperimentConfig& config, const TraceSet& traces);

/// Time-domain indicator with the configured sigma and terminal time.
IndicatorGrid image_dsm(const ExperimentConfig& config, const TraceSet& traces);

/// Delay-and-sum image; t0 is imaging.tfm_t0 or the pulse delay.
IndicatorGrid image_tfm(const ExperimentConfig& config, const TraceSet& traces);

/// Frequency-domain indicator matched to image_dsm: xi up to 6 * 2 pi f0 and a
/// grid step resolving every delayed sample that image_dsm reads.
FreqIndicator make_freq_indicator(const ExperimentConfig& config, const TraceSet& traces);

/// Distance from center to the nearest peak; +inf when there is none.
double localization_error(const std::vector<Peak>& peaks, const Vec3& center);

/// Largest localization_error over the scatterer centers of the scene.
double worst_localization_error(const std::vector<Peak>& peaks, const Scene& scene);

}  // namespace tdsm

#endif  // TDSM_PIPELINE_HPP
