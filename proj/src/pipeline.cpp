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

#include "tdsm/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace tdsm {

int trace_components(const ExperimentConfig& config) {
  if (config.scene.dim == 3) return 3;
  return config.mode == Mode2D::TM ? 1 : 2;
}

SimulationResult simulate(const ExperimentConfig& config) {
  SimulationResult out;
  if (config.scene.dim == 2) {
    out.traces = run_forward_2d(config.scene, config.solver, config.mode, config.duration);
  } else {
    BornParams params = config.born;
    params.sigma = config.imaging.sigma;
    BornResult born = born_synthesize_3d(config.scene, params);
    out.traces = std::move(born.traces);
    out.size_warning = born.size_warning;
  }
  return out;
}

double imaging_time(const ExperimentConfig& config, const TraceSet& traces) {
  return config.imaging.T > 0.0 ? config.imaging.T : traces.duration();
}

IndicatorGrid image_dsm(const ExperimentConfig& config, const TraceSet& traces) {
  const Scene& s = config.scene;
  return time_indicator(traces, s.grid, config.imaging.sigma, s.constants.c0(),
                        imaging_time(config, traces), s.receivers.surface_weight());
}

IndicatorGrid image_tfm(const ExperimentConfig& config, const TraceSet& traces) {
  const Scene& s = config.scene;
  const double t0 = config.imaging.tfm_t0 >= 0.0 ? config.imaging.tfm_t0 : s.source.pulse.t0;
  return tfm_indicator(traces, s.source.location, t0, s.grid, s.constants.c0(),
                       s.receivers.surface_weight());
}

FreqIndicator make_freq_indicator(const ExperimentConfig& config, const TraceSet& traces) {
  const Scene& s = config.scene;
  const double c0 = s.constants.c0();
  // Longest receiver-to-grid delay bounds how far past T the indicator reads.
  double reach = 0.0;
  for (const Vec3& x : traces.receivers) {
    for (int corner = 0; corner < (1 << s.dim); ++corner) {
      Vec3 p = Vec3::Zero();
      for (int a = 0; a < s.dim; ++a) p[a] = (corner >> a) & 1 ? s.grid.max[a] : s.grid.min[a];
      reach = std::max(reach, (x - p).norm());
    }
  }
  const double support = imaging_time(config, traces) + reach / c0;
  const double xi_max = 6.0 * 2.0 * kPi * s.source.pulse.f0;
  return FreqIndicator(traces, config.imaging.sigma, indicator_xi_grid(xi_max, 2.0 * support),
                       s.receivers.surface_weight(), c0);
}

double localization_error(const std::vector<Peak>& peaks, const Vec3& center) {
  double best = std::numeric_limits<double>::infinity();
  for (const Peak& p : peaks) best = std::min(best, (p.point - center).norm());
  return best;
}

double worst_localization_error(const std::vector<Peak>& peaks, const Scene& scene) {
  double worst = 0.0;
  for (const Scatterer& s : scene.scatterers) {
    worst = std::max(worst, localization_error(peaks, s.center));
  }
  return worst;
}

}  // namespace tdsm
