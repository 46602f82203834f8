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

#include "tdsm/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdsm {

double IndicatorGrid::max() const {
  double out = 0.0;
  for (double v : values) out = std::max(out, v);
  return out;
}

namespace {

void delay_weights(double f, double w[4]) {
  // Cubic Lagrange through samples q-1, q, q+1, q+2 at fractional offset f.
  w[0] = -f * (f - 1.0) * (f - 2.0) / 6.0;
  w[1] = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
  w[2] = -(f + 1.0) * f * (f - 2.0) / 2.0;
  w[3] = (f + 1.0) * f * (f - 1.0) / 6.0;
}

}  // namespace

std::vector<double> sample_trace_delayed(const TraceSet& traces, std::size_t m, double t) {
  const std::size_t comps = static_cast<std::size_t>(traces.components);
  std::vector<double> out(comps, 0.0);
  if (!(t >= 0.0) || traces.n_samples == 0) return out;
  const double s = t / traces.dt;
  const double last = static_cast<double>(traces.n_samples - 1);
  if (s > last) return out;
  const auto q = static_cast<std::size_t>(std::floor(s));
  const double f = s - static_cast<double>(q);
  if (f == 0.0) {
    for (std::size_t c = 0; c < comps; ++c) out[c] = traces.at(m, q, int(c));
    return out;
  }
  double w[4];
  delay_weights(f, w);
  // Samples outside the record count as zero.
  for (int o = -1; o <= 2; ++o) {
    const long long j = static_cast<long long>(q) + o;
    if (j < 0 || j >= static_cast<long long>(traces.n_samples)) continue;
    for (std::size_t c = 0; c < comps; ++c) out[c] += w[o + 1] * traces.at(m, std::size_t(j), int(c));
  }
  return out;
}

namespace {

std::size_t record_steps(const TraceSet& traces, double T) {
  if (!(T > 0.0) || T > traces.duration() * (1.0 + 1e-12)) {
    throw std::invalid_argument("indicator: T must lie in (0, recorded duration]");
  }
  const auto nt = static_cast<std::size_t>(std::floor(T / traces.dt + 1e-9));
  if (nt < 1) throw std::invalid_argument("indicator: T is shorter than one time step");
  return nt;
}

void check_receivers(const TraceSet& traces) {
  if (traces.n_receivers() == 0) throw std::invalid_argument("indicator: no receivers");
}

// Shared state for evaluating the time indicator at many points.
struct TimeKernel {
  const TraceSet& traces;
  double sigma;
  double c0;
  double T;
  double weight;  // w / N_s
  std::size_t nt;
  std::vector<double> damp2;  // exp(-2 sigma t_n)

  TimeKernel(const TraceSet& tr, double s, double c, double t, double surface_weight)
      : traces(tr), sigma(s), c0(c), T(t) {
    check_receivers(tr);
    nt = record_steps(tr, t);
    weight = surface_weight / static_cast<double>(tr.n_receivers());
    damp2.resize(nt + 1);
    for (std::size_t n = 0; n <= nt; ++n) damp2[n] = std::exp(-2.0 * sigma * double(n) * tr.dt);
  }

  double eval(const Vec3& z, std::vector<double>& acc) const {
    const std::size_t comps = static_cast<std::size_t>(traces.components);
    const std::size_t last = traces.n_samples - 1;
    acc.assign((nt + 1) * comps, 0.0);
    for (std::size_t m = 0; m < traces.n_receivers(); ++m) {
      const double r = (traces.receivers[m] - z).norm();
      if (r < 1e-9) throw std::invalid_argument("indicator: sampling point coincides with a receiver");
      const double delay = r / c0;
      const double a = weight * std::exp(-sigma * delay) / (4.0 * kPi * r);
      const double s = delay / traces.dt;
      const auto q = static_cast<std::size_t>(std::floor(s));
      const double f = s - static_cast<double>(q);
      // t_n + delay must stay inside the record.
      const std::size_t need = f > 0.0 ? q + 1 : q;
      if (need > last) continue;
      double w[4] = {0.0, 1.0, 0.0, 0.0};
      if (f > 0.0) delay_weights(f, w);
      const std::size_t n_max = std::min(nt, last - need);
      const double* data = traces.receiver_data(m);
      for (int o = -1; o <= 2; ++o) {
        if (w[o + 1] == 0.0) continue;
        // Sample index j = n + q + o must lie in [0, last].
        const long long first = std::max<long long>(0, -(static_cast<long long>(q) + o));
        const long long stop =
            std::min<long long>(static_cast<long long>(n_max), static_cast<long long>(last) - static_cast<long long>(q) - o);
        if (stop < first) continue;
        const double* d = data + (static_cast<long long>(q) + o + first) * static_cast<long long>(comps);
        double* out = acc.data() + first * static_cast<long long>(comps);
        const std::size_t len = static_cast<std::size_t>(stop - first + 1) * comps;
        const double wo = a * w[o + 1];
        for (std::size_t k = 0; k < len; ++k) out[k] += wo * d[k];
      }
    }
    double sum = 0.0;
    for (std::size_t n = 0; n <= nt; ++n) {
      double p = 0.0;
      for (std::size_t c = 0; c < comps; ++c) p += acc[n * comps + c] * acc[n * comps + c];
      sum += damp2[n] * p;
    }
    return T / static_cast<double>(nt) * sum;
  }
};

void check_grid_dim(const TraceSet& traces, const SamplingGrid& grid) {
  const int rx_dim = traces.components == 3 ? 3 : 2;
  if (grid.dim != rx_dim) {
    throw std::invalid_argument("indicator: grid dimension does not match the traces");
  }
}

}  // namespace

double time_indicator_at(const TraceSet& traces, const Vec3& z, double sigma, double c0, double T,
                         double surface_weight) {
  TimeKernel kernel(traces, sigma, c0, T, surface_weight);
  std::vector<double> acc;
  return kernel.eval(z, acc);
}

IndicatorGrid time_indicator(const TraceSet& traces, const SamplingGrid& grid, double sigma,
                             double c0, double T, double surface_weight) {
  check_grid_dim(traces, grid);
  TimeKernel kernel(traces, sigma, c0, T, surface_weight);
  for (const Vec3& x : traces.receivers) {
    for (std::size_t l = 0; l < grid.size(); ++l) {
      if ((grid.point(l) - x).norm() < 1e-9) {
        throw std::invalid_argument("indicator: sampling point coincides with a receiver");
      }
    }
  }
  IndicatorGrid out;
  out.grid = grid;
  out.sigma = sigma;
  out.T = T;
  out.method = "dsm";
  out.homogeneity = "quadratic";
  out.values.assign(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t l) {
    thread_local std::vector<double> acc;
    out.values[l] = kernel.eval(grid.point(l), acc);
  });
  return out;
}

IndicatorGrid tfm_indicator(const TraceSet& traces, const Vec3& source, double t0,
                            const SamplingGrid& grid, double c0, double surface_weight) {
  check_receivers(traces);
  check_grid_dim(traces, grid);
  const double weight = surface_weight / static_cast<double>(traces.n_receivers());
  const std::size_t comps = static_cast<std::size_t>(traces.components);
  IndicatorGrid out;
  out.grid = grid;
  out.T = traces.duration();
  out.method = "tfm";
  out.homogeneity = "linear";
  out.values.assign(grid.size(), 0.0);
  for (const Vec3& x : traces.receivers) {
    for (std::size_t l = 0; l < grid.size(); ++l) {
      if ((grid.point(l) - x).norm() < 1e-9) {
        throw std::invalid_argument("indicator: sampling point coincides with a receiver");
      }
    }
  }
  parallel_for(grid.size(), [&](std::size_t l) {
    const Vec3 z = grid.point(l);
    const double leg = (source - z).norm() / c0;
    std::vector<double> sum(comps, 0.0);
    for (std::size_t m = 0; m < traces.n_receivers(); ++m) {
      const double t = t0 + leg + (traces.receivers[m] - z).norm() / c0;
      const std::vector<double> v = sample_trace_delayed(traces, m, t);
      for (std::size_t c = 0; c < comps; ++c) sum[c] += v[c];
    }
    double norm2 = 0.0;
    for (double s : sum) norm2 += s * s;
    out.values[l] = weight * std::sqrt(norm2);
  });
  return out;
}

TraceSet select_aperture(const TraceSet& traces, const ReceiverArray& array, double theta_min,
                         double theta_max) {
  if (array.layout != ReceiverLayout::circle2d) {
    throw ConfigError("aperture: requires a circular receiver array");
  }
  if (!(theta_min <= theta_max)) throw ConfigError("aperture: theta_min must not exceed theta_max");
  if (array.positions.size() != traces.n_receivers()) {
    throw ConfigError("aperture: receiver array does not match the traces");
  }
  std::vector<std::size_t> keep;
  for (std::size_t m = 0; m < array.positions.size(); ++m) {
    // 1e-9 rad of slack so receivers placed exactly on an end angle survive rounding.
    const double theta = array.angle(m);
    if (theta >= theta_min - 1e-9 && theta <= theta_max + 1e-9) keep.push_back(m);
  }
  if (keep.empty()) throw ConfigError("aperture: no receiver inside the angular range");
  std::vector<Vec3> rx;
  for (std::size_t m : keep) rx.push_back(traces.receivers[m]);
  TraceSet out(rx, traces.dt, traces.n_samples, traces.components);
  const std::size_t block = traces.n_samples * static_cast<std::size_t>(traces.components);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    std::copy_n(traces.receiver_data(keep[i]), block, out.values.begin() + i * block);
  }
  return out;
}

}  // namespace tdsm
