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

#ifndef TDSM_XFORM_HPP
#define TDSM_XFORM_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tdsm/common.hpp"
#include "tdsm/forward.hpp"
#include "tdsm/signal.hpp"

namespace tdsm {

/// Trapezoid approximation of L[f](xi + i sigma) = int_0^T exp(i xi t) exp(-sigma t) f(t) dt.
/// xi_grid must be strictly increasing; sigma >= 0.
Spectrum fourier_laplace(const SampledSignal& signal, double sigma, std::span<const double> xi_grid);

/// Same transform for every receiver/component of a trace set; channel index m * components + c.
Spectrum fourier_laplace(const TraceSet& traces, double sigma, std::span<const double> xi_grid);

struct ParsevalResult {
  double residual = 0.0;        // |lhs - rhs| / lhs
  double lhs = 0.0;             // int |exp(-sigma t) f|^2 dt
  double rhs = 0.0;             // (1/2pi) int_{-xi_max}^{xi_max} |L[f]|^2 dxi
  bool under_resolved = false;  // |L|^2 at xi_max above 1e-6 of its peak
};

/// Both sides of the Parseval identity computed independently. The signal must
/// have decayed at the end of its record (|last| < 1e-6 max), otherwise
/// std::invalid_argument is thrown.
ParsevalResult parseval_residual(const SampledSignal& signal, double sigma, double xi_max,
                                 std::size_t n_freq);

/// Uniform grid on [0, xi_max] fine enough that sampling |L|^2 loses nothing for
/// signals supported on an interval of the given length.
std::vector<double> indicator_xi_grid(double xi_max, double support_length);

/**
 * Frequency-domain form of the sampling indicator,
 *
 *   (1/2pi) int |sum_m w_m E^s(x_m, xi + i sigma) exp(-i xi |x_m - z|/c0) / (4 pi |x_m - z|)|^2 dxi
 *
 * with w_m = surface_weight / N_s. The receiver spectra are computed once at
 * construction; the integral over negative xi is folded in by conjugate symmetry,
 * so xi_grid must start at a non-negative value (normally 0).
 */
class FreqIndicator {
 public:
  FreqIndicator(const TraceSet& traces, double sigma, std::vector<double> xi_grid,
                double surface_weight, double c0);

  /// Throws std::invalid_argument when z is within 1e-9 m of a receiver.
  double operator()(const Vec3& z) const;

  const Spectrum& spectra() const { return spectra_; }

 private:
  std::vector<Vec3> receivers_;
  int components_ = 1;
  double weight_ = 0.0;
  double c0_ = 0.0;
  Spectrum spectra_;
  std::vector<double> quad_;  // trapezoid weights on xi_grid
};

/// One-shot convenience wrapper around FreqIndicator.
double freq_indicator(const TraceSet& traces, const Vec3& z, double sigma,
                      std::span<const double> xi_grid, double surface_weight, double c0);

}  // namespace tdsm

#endif  // TDSM_XFORM_HPP
