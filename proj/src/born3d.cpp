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

// Born synthesizer: the total field inside each box is replaced by the incident
// field, the box is collapsed to its center, and the Lippmann-Schwinger
// correction is evaluated frequency by frequency.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "tdsm/forward.hpp"
#include "tdsm/specfun.hpp"
#include "tdsm/xform.hpp"

namespace tdsm {

namespace {

using cd = std::complex<double>;

// Incident field spectra at y on the xi grid, from a finely sampled record so
// that the trapezoid rule resolves the highest frequency.
std::array<std::vector<cd>, 3> incident_spectrum(const Scene& scene, const Vec3& y,
                                                 const std::vector<double>& xi, double sigma,
                                                 double duration) {
  const double c0 = scene.constants.c0();
  const double dt_target = 0.05 / xi.back();
  const auto n = static_cast<std::size_t>(std::ceil(duration / dt_target)) + 1;
  const double dt = duration / double(n - 1);
  std::array<SampledSignal, 3> comp;
  for (auto& s : comp) {
    s.dt = dt;
    s.values.assign(n, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 e = incident_3d(y, double(i) * dt, scene.source, c0);
    for (int c = 0; c < 3; ++c) comp[c].values[i] = e[c];
  }
  std::array<std::vector<cd>, 3> out;
  for (int c = 0; c < 3; ++c) out[c] = fourier_laplace(comp[c], sigma, xi).values[0];
  return out;
}

}  // namespace

BornResult born_synthesize_3d(const Scene& scene, const BornParams& params) {
  if (scene.dim != 3) throw SolverError("born_synthesize_3d requires a 3D scene");
  if (!(params.duration > 0.0) || params.n_steps < 1 || params.n_freq < 2 ||
      !(params.sigma >= 0.0)) {
    throw SolverError("invalid Born parameters");
  }
  const double f0 = scene.source.pulse.f0;
  const double xi_max = params.xi_max > 0.0 ? params.xi_max : 4.0 * 2.0 * kPi * f0;
  const double c0 = scene.constants.c0();
  const double eps0 = scene.constants.eps0;
  const double mu0 = scene.constants.mu0;
  const double sigma = params.sigma;

  BornResult result;
  const double dt = params.duration / double(params.n_steps);
  result.traces = TraceSet(scene.receivers.positions, dt, params.n_steps + 1, 3);

  const std::vector<double> xi = linspace(0.0, xi_max, params.n_freq);
  const std::size_t nf = xi.size();
  const std::size_t nr = scene.receivers.positions.size();

  // S(k, 3m + c): scattered spectrum at receiver m, already multiplied by the
  // trapezoid weight of frequency k.
  Eigen::MatrixXcd spec = Eigen::MatrixXcd::Zero(nf, 3 * nr);
  for (const Scatterer& s : scene.scatterers) {
    if (std::cbrt(s.volume(3)) * xi_max / c0 >= 1.0) result.size_warning = true;
    const double contrast = s.eps_r - 1.0;
    if (contrast == 0.0) continue;
    const auto inc = incident_spectrum(scene, s.center, xi, sigma, params.duration);
    const double vol = s.volume(3);
    parallel_for(nf, [&](std::size_t k) {
      // Skip xi = 0: the omega^2 factor sends its contribution to 0 when sigma = 0.
      if (xi[k] == 0.0 && sigma == 0.0) return;
      const cd omega(xi[k], sigma);
      const cd k2 = omega * omega * mu0 * eps0;
      const Eigen::Vector3cd ei(inc[0][k], inc[1][k], inc[2][k]);
      for (std::size_t m = 0; m < nr; ++m) {
        const ComplexDyadic3 phi =
            dyadic_green_freq(scene.receivers.positions[m], s.center, omega, eps0, mu0);
        const Eigen::Vector3cd es = k2 * contrast * vol * (phi * ei);
        for (int c = 0; c < 3; ++c) spec(k, 3 * m + c) += es[c];
      }
    });
  }
  for (std::size_t k = 0; k < nf; ++k) {
    const double w = (k == 0 || k + 1 == nf) ? 0.5 * (xi[1] - xi[0]) : (xi[k] - xi[k - 1]);
    spec.row(k) *= w;
  }

  // E(t) = exp(sigma t)/(2pi) int exp(-i xi t) E(xi) dxi = exp(sigma t)/pi Re int_0^xi_max ...
  const std::size_t nt = params.n_steps + 1;
  Eigen::MatrixXd cos_t(nt, nf);
  Eigen::MatrixXd sin_t(nt, nf);
  for (std::size_t n = 0; n < nt; ++n) {
    const double t = double(n) * dt;
    for (std::size_t k = 0; k < nf; ++k) {
      cos_t(n, k) = std::cos(xi[k] * t);
      sin_t(n, k) = std::sin(xi[k] * t);
    }
  }
  // Re(exp(-i xi t) S) = cos(xi t) Re S + sin(xi t) Im S
  const Eigen::MatrixXd time = cos_t * spec.real() + sin_t * spec.imag();
  for (std::size_t m = 0; m < nr; ++m) {
    for (std::size_t n = 0; n < nt; ++n) {
      const double scale = std::exp(sigma * double(n) * dt) / kPi;
      for (int c = 0; c < 3; ++c) result.traces.at(m, n, c) = scale * time(n, 3 * m + c);
    }
  }
  return result;
}

}  // namespace tdsm
