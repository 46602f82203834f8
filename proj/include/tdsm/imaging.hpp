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

#ifndef TDSM_IMAGING_HPP
#define TDSM_IMAGING_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tdsm/common.hpp"
#include "tdsm/forward.hpp"
#include "tdsm/scene.hpp"

namespace tdsm {

/// Indicator values on a sampling grid (x fastest) plus provenance metadata.
struct IndicatorGrid {
  SamplingGrid grid;
  std::vector<double> values;
  double sigma = 0.0;
  double T = 0.0;
  std::string method = "dsm";             // dsm or tfm
  std::string homogeneity = "quadratic";  // quadratic (dsm) or linear (tfm)
  std::string provenance;                 // free-form trace origin, no whitespace

  double max() const;
};

/// Cubic Lagrange interpolation of receiver m at time t through the four
/// nearest samples (missing neighbours count as zero), one value per
/// component. Exact at sample times. Zero for t < 0 and past the last sample.
std::vector<double> sample_trace_delayed(const TraceSet& traces, std::size_t m, double t);

/**
 * Time-domain sampling indicator at one point,
 *
 *   (T/N_t) sum_{n=0}^{N_t} |(w/N_s) sum_m E(x_m, t_n + d_m/c0) exp(-sigma (t_n + d_m/c0)) / (4 pi d_m)|^2
 *
 * with d_m = |x_m - z|, N_t = T/dt and w the receiver surface weight.
 * Throws std::invalid_argument for T beyond the record or z on a receiver.
 */
double time_indicator_at(const TraceSet& traces, const Vec3& z, double sigma, double c0, double T,
                         double surface_weight);

/// time_indicator_at over every grid point, evaluated in parallel.
IndicatorGrid time_indicator(const TraceSet& traces, const SamplingGrid& grid, double sigma,
                             double c0, double T, double surface_weight);

/// Delay-and-sum baseline |(w/N_s) sum_m E(x_m, t0 + |x_m - z|/c0 + |y - z|/c0)|
/// for a source at y; vector traces use the Euclidean norm of the summed vector.
IndicatorGrid tfm_indicator(const TraceSet& traces, const Vec3& source, double t0,
                            const SamplingGrid& grid, double c0, double surface_weight);

/// Keeps receivers of a circular array whose polar angle lies in [theta_min, theta_max]
/// (closed, with 1e-9 rad slack). Angles are measured in [0, 2 pi).
/// Throws ConfigError when the selection is empty.
TraceSet select_aperture(const TraceSet& traces, const ReceiverArray& array, double theta_min,
                         double theta_max);

/// value + delta R max|E| E/|E| with R standard normal per (receiver, sample).
/// Each draw comes from its own generator seeded by (seed, m, n), so the result
/// does not depend on evaluation order. Entries with E = 0 are left untouched.
TraceSet add_noise(const TraceSet& traces, double delta, std::uint64_t seed);

struct Peak {
  std::array<std::size_t, 3> index{0, 0, 0};
  Vec3 point = Vec3::Zero();
  double value = 0.0;
};

/// Strict local maxima over face neighbours with value >= rel_threshold * max,
/// sorted by decreasing value. A plateau of equal values counts once, reported
/// at its lexicographically smallest index, and only if every cell bordering
/// it is strictly lower.
std::vector<Peak> locate_peaks(const IndicatorGrid& grid, double rel_threshold);

/// Divides by the global maximum. Throws std::invalid_argument for a zero grid.
IndicatorGrid normalize(const IndicatorGrid& grid);

}  // namespace tdsm

#endif  // TDSM_IMAGING_HPP
