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

#ifndef TDSM_WAVEFORM_HPP
#define TDSM_WAVEFORM_HPP

#include <span>
#include <string>

#include "tdsm/signal.hpp"

namespace tdsm {

enum class PulseKind { gaussian_sine, smooth_sawtooth };

std::string to_string(PulseKind kind);
PulseKind pulse_kind_from_string(const std::string& name);

/**
 * Temporal modulation chi(t) of the dipole source.
 *
 * gaussian_sine:   exp(-(t-t0)^2/a^2) sin(w (t-t0)),  a = 1/(2 f0), w = 2 pi f0
 * smooth_sawtooth: sawtooth of rate b = pi f0 mollified by exp(-c s^2)
 *
 * Both vanish identically for t < 0.
 */
struct PulseSpec {
  PulseKind kind = PulseKind::gaussian_sine;
  double f0 = 0.0;         // Hz
  double t0 = 0.0;         // s, gaussian_sine only
  double smoothing = 0.0;  // c in 1/s^2, smooth_sawtooth only

  /// Gaussian pulse with the default delay t0 = 4a when t0 < 0.
  static PulseSpec gaussian(double f0, double t0 = -1.0);
  static PulseSpec sawtooth(double f0, double smoothing);

  double envelope_width() const { return 1.0 / (2.0 * f0); }  // a
  double angular_frequency() const;                           // w
  double sawtooth_rate() const;                               // b

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
};

double eval_gaussian_pulse(double t, const PulseSpec& spec);
double eval_smooth_sawtooth(double t, const PulseSpec& spec);

/// Dispatches on spec.kind.
double eval_pulse(double t, const PulseSpec& spec);

/// d chi / dt. Analytic for the Gaussian pulse; for the sawtooth the
/// derivative is moved onto the mollifier and integrated by quadrature.
double eval_pulse_derivative(double t, const PulseSpec& spec);

SampledSignal sample_pulse(const PulseSpec& spec, double dt, std::size_t n);

/// Trapezoid approximation of int exp(-2 pi i f t) s(t) dt on the sample grid.
/// f_grid must be non-empty and strictly increasing (Hz); the returned
/// xi_grid holds 2 pi f.
Spectrum spectrum(const SampledSignal& signal, std::span<const double> f_grid);

}  // namespace tdsm

#endif  // TDSM_WAVEFORM_HPP
