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

#ifndef TDSM_SIGNAL_HPP
#define TDSM_SIGNAL_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace tdsm {

/// Uniformly sampled causal time series; values[n] is the sample at t = n * dt.
struct SampledSignal {
  double dt = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double time(std::size_t n) const { return static_cast<double>(n) * dt; }
  /// Throws std::invalid_argument unless dt > 0 and there are at least 2 samples.
  void validate() const;
};

/// Complex transform values on a frequency grid at fixed damping sigma.
/// values[channel][k] belongs to xi_grid[k] (rad/s).
struct Spectrum {
  double sigma = 0.0;
  std::vector<double> xi_grid;
  std::vector<std::vector<std::complex<double>>> values;
};

/// n equally spaced points covering [lo, hi] inclusive (n >= 2).
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace tdsm

#endif  // TDSM_SIGNAL_HPP
