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

#ifndef TDSM_FORWARD_HPP
#define TDSM_FORWARD_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tdsm/common.hpp"
#include "tdsm/scene.hpp"
#include "tdsm/signal.hpp"

namespace tdsm {

/// Scattered field at every receiver and time sample.
/// Samples sit at t = n * dt for n in [0, n_samples); layout is [m][n][c].
struct TraceSet {
  std::vector<Vec3> receivers;
  double dt = 0.0;
  std::size_t n_samples = 0;
  int components = 1;
  std::vector<double> values;

  TraceSet() = default;
  TraceSet(std::vector<Vec3> receivers, double dt, std::size_t n_samples, int components);

  std::size_t n_receivers() const { return receivers.size(); }
  /// Time of the last sample, (n_samples - 1) dt.
  double duration() const { return dt * static_cast<double>(n_samples - 1); }
  std::size_t offset(std::size_t m, std::size_t n) const {
    return (m * n_samples + n) * static_cast<std::size_t>(components);
  }
  double& at(std::size_t m, std::size_t n, int c) { return values[offset(m, n) + c]; }
  double at(std::size_t m, std::size_t n, int c) const { return values[offset(m, n) + c]; }
  const double* receiver_data(std::size_t m) const { return values.data() + offset(m, 0); }

  /// One receiver/component as a sampled signal.
  SampledSignal channel(std::size_t m, int c) const;
  double max_abs() const;
};

// ---------------------------------------------------------------------------
// Analytic incident fields built on G_chi(x, y; t) = chi(t - |x-y|/c0) / (4 pi |x-y|).

/// Spatial gradient of G_chi at x, by the chain rule.
Vec3 retarded_kernel_gradient(const Vec3& x, double t, const SourceSpec& source, double c0);

/// TM mode: p2 dG/dx1 - p1 dG/dx2.
double incident_tm(const Vec3& x, double t, const SourceSpec& source, double c0);
/// TE mode: (dG/dx2, -dG/dx1).
Eigen::Vector2d incident_te(const Vec3& x, double t, const SourceSpec& source, double c0);
/// 3D: curl(p G_chi) = grad G_chi x p.
Vec3 incident_3d(const Vec3& x, double t, const SourceSpec& source, double c0);

// ---------------------------------------------------------------------------
// 2D staggered-grid solver.

enum class Mode2D { TM, TE };

struct SolverParams {
  double h = 0.1;                   // cell size, m
  double dt = 2e-10;                // time step, s
  double padding = 1.0;             // free space beyond source/receivers, m
  int absorber_cells = 20;          // absorbing layer thickness
  double absorber_order = 2.0;      // grading exponent of the conductivity profile
  double absorber_reflection = 1e-6;  // nominal normal-incidence reflection
  double mollifier_cells = 2.0;     // source bump radius in cells
  int spatial_order = 4;            // 2 (classic Yee) or 4 (staggered 9/8, -1/24 stencil)
  int record_stride = 1;            // traces keep every k-th leapfrog step
};

struct CflReport {
  bool ok = true;        // c0 dt <= h / (sqrt(2) s), s = 1 (order 2) or 7/6 (order 4)
  bool warning = false;  // fewer than 8 cells per carrier wavelength
  double courant = 0.0;  // c0 dt / h
  double courant_limit = 0.0;
  double cells_per_wavelength = 0.0;
  std::string message;
};

/// Stability bound of the leapfrog scheme for the chosen stencil; the
/// carrier wavelength is taken as c0 / f0.
CflReport check_cfl(const SolverParams& params, const PhysicalConstants& constants, double f0);

struct ForwardDiagnostics {
  /// Discrete electromagnetic energy of the background run after every step.
  std::vector<double> background_energy;
  std::size_t nx = 0;
  std::size_t ny = 0;
};

/**
 * Full-wave 2D simulation. Runs the same leapfrog scheme twice, once with the
 * scene permittivity and once in vacuum, driven by the same mollified dipole;
 * the returned traces are (total - background) at the receivers, with
 * trace step dt * record_stride and round(duration / trace step) + 1 samples.
 *
 * Throws SolverError on CFL violation, receivers outside the interior box,
 * or a non-finite field (message carries the step index).
 */
TraceSet run_forward_2d(const Scene& scene, const SolverParams& params, Mode2D mode,
                        double duration, ForwardDiagnostics* diagnostics = nullptr);

// ---------------------------------------------------------------------------
// 3D Born synthesizer.

struct BornParams {
  double sigma = 0.0;      // 1/s
  double xi_max = 0.0;     // rad/s; <= 0 selects 4 * 2 pi f0
  std::size_t n_freq = 2048;
  double duration = 1e-7;  // s
  std::size_t n_steps = 500;
};

struct BornResult {
  TraceSet traces;
  bool size_warning = false;  // some scatterer is not small against xi_max / c0
};

/// Linearized scattered field of point-like boxes, synthesized in the frequency
/// domain and inverted back onto the time grid dt = duration / n_steps.
BornResult born_synthesize_3d(const Scene& scene, const BornParams& params);

}  // namespace tdsm

#endif  // TDSM_FORWARD_HPP
