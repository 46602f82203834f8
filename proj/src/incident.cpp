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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

#include "tdsm/forward.hpp"
#include "tdsm/waveform.hpp"

namespace tdsm {

TraceSet::TraceSet(std::vector<Vec3> rx, double step, std::size_t samples, int comps)
    : receivers(std::move(rx)), dt(step), n_samples(samples), components(comps) {
  values.assign(receivers.size() * n_samples * static_cast<std::size_t>(components), 0.0);
}

SampledSignal TraceSet::channel(std::size_t m, int c) const {
  SampledSignal s;
  s.dt = dt;
  s.values.resize(n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) s.values[n] = at(m, n, c);
  return s;
}

double TraceSet::max_abs() const {
  double out = 0.0;
  for (double v : values) out = std::max(out, std::abs(v));
  return out;
}

Vec3 retarded_kernel_gradient(const Vec3& x, double t, const SourceSpec& source, double c0) {
  const Vec3 d = x - source.location;
  const double r = d.norm();
  if (!(r > 0.0)) {
    throw std::invalid_argument("incident field is singular at the source location");
  }
  const double retarded = t - r / c0;
  if (retarded < 0.0) return Vec3::Zero();
  const double chi = eval_pulse(retarded, source.pulse);
  const double dchi = eval_pulse_derivative(retarded, source.pulse);
  // dG/dr = -chi'/(4 pi r c0) - chi/(4 pi r^2)
  const double dG_dr = -dchi / (4.0 * kPi * r * c0) - chi / (4.0 * kPi * r * r);
  return dG_dr * d / r;
}

double incident_tm(const Vec3& x, double t, const SourceSpec& source, double c0) {
  const Vec3 g = retarded_kernel_gradient(x, t, source, c0);
  const Vec3& p = source.polarization;
  return p.y() * g.x() - p.x() * g.y();
}

Eigen::Vector2d incident_te(const Vec3& x, double t, const SourceSpec& source, double c0) {
  const Vec3 g = retarded_kernel_gradient(x, t, source, c0);
  return {g.y(), -g.x()};
}

Vec3 incident_3d(const Vec3& x, double t, const SourceSpec& source, double c0) {
  return retarded_kernel_gradient(x, t, source, c0).cross(source.polarization);
}

}  // namespace tdsm
