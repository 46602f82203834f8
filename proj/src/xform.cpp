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

#include "tdsm/xform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdsm {

namespace {

using cd = std::complex<double>;

void check_grid(std::span<const double> xi_grid, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("fourier_laplace: sigma must be non-negative");
  }
  for (std::size_t k = 0; k < xi_grid.size(); ++k) {
    if (!std::isfinite(xi_grid[k]) || (k > 0 && !(xi_grid[k] > xi_grid[k - 1]))) {
      throw std::invalid_argument("fourier_laplace: xi grid must be strictly increasing");
    }
  }
}

// Trapezoid weight times exp(i xi t_n) exp(-sigma t_n) for every sample.
void fill_kernel(std::vector<cd>& kernel, double xi, double sigma, double dt) {
  const std::size_t n = kernel.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = double(i) * dt;
    const double w = (i == 0 || i + 1 == n) ? 0.5 * dt : dt;
    kernel[i] = std::polar(w * std::exp(-sigma * t), xi * t);
  }
}

std::vector<double> trapezoid_weights(std::span<const double> x) {
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double half = 0.5 * (x[k + 1] - x[k]);
    w[k] += half;
    w[k + 1] += half;
  }
  return w;
}

}  // namespace

Spectrum fourier_laplace(const SampledSignal& signal, double sigma, std::span<const double> xi_grid) {
  signal.validate();
  check_grid(xi_grid, sigma);
  Spectrum out;
  out.sigma = sigma;
  out.xi_grid.assign(xi_grid.begin(), xi_grid.end());
  out.values.assign(1, std::vector<cd>(xi_grid.size()));
  parallel_for(xi_grid.size(), [&](std::size_t k) {
    std::vector<cd> kernel(signal.size());
    fill_kernel(kernel, xi_grid[k], sigma, signal.dt);
    cd acc = 0.0;
    for (std::size_t n = 0; n < kernel.size(); ++n) acc += kernel[n] * signal.values[n];
    out.values[0][k] = acc;
  });
  return out;
}

Spectrum fourier_laplace(const TraceSet& traces, double sigma, std::span<const double> xi_grid) {
  if (traces.n_samples < 2 || !(traces.dt > 0.0)) {
    throw std::invalid_argument("fourier_laplace: traces need dt > 0 and at least 2 samples");
  }
  check_grid(xi_grid, sigma);
  const std::size_t comps = static_cast<std::size_t>(traces.components);
  const std::size_t channels = traces.n_receivers() * comps;
  Spectrum out;
  out.sigma = sigma;
  out.xi_grid.assign(xi_grid.begin(), xi_grid.end());
  out.values.assign(channels, std::vector<cd>(xi_grid.size()));
  parallel_for(xi_grid.size(), [&](std::size_t k) {
    std::vector<cd> kernel(traces.n_samples);
    fill_kernel(kernel, xi_grid[k], sigma, traces.dt);
    std::vector<cd> acc(comps);
    for (std::size_t m = 0; m < traces.n_receivers(); ++m) {
      std::fill(acc.begin(), acc.end(), cd(0.0));
      const double* data = traces.receiver_data(m);
      for (std::size_t n = 0; n < traces.n_samples; ++n) {
        for (std::size_t c = 0; c < comps; ++c) acc[c] += kernel[n] * data[n * comps + c];
      }
      for (std::size_t c = 0; c < comps; ++c) out.values[m * comps + c][k] = acc[c];
    }
  });
  return out;
}

ParsevalResult parseval_residual(const SampledSignal& signal, double sigma, double xi_max,
                                 std::size_t n_freq) {
  signal.validate();
  if (!(xi_max > 0.0) || n_freq < 2) {
    throw std::invalid_argument("parseval_residual: need xi_max > 0 and n_freq >= 2");
  }
  double peak = 0.0;
  for (double v : signal.values) peak = std::max(peak, std::abs(v));
  if (!(std::abs(signal.values.back()) < 1e-6 * peak)) {
    throw std::invalid_argument("parseval_residual: signal has not decayed at the end of the record");
  }

  ParsevalResult r;
  const std::size_t n = signal.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double g = std::exp(-sigma * signal.time(i)) * signal.values[i];
    r.lhs += ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * signal.dt * g * g;
  }

  const std::vector<double> xi = linspace(0.0, xi_max, n_freq);
  const Spectrum s = fourier_laplace(signal, sigma, xi);
  const std::vector<double> w = trapezoid_weights(xi);
  double spec_peak = 0.0;
  double integral = 0.0;
  for (std::size_t k = 0; k < n_freq; ++k) {
    const double p = std::norm(s.values[0][k]);
    spec_peak = std::max(spec_peak, p);
    integral += w[k] * p;
  }
  // (1/2pi) over [-xi_max, xi_max] is (1/pi) over [0, xi_max] for a real signal.
  r.rhs = integral / kPi;
  r.under_resolved = std::norm(s.values[0].back()) > 1e-6 * spec_peak;
  r.residual = r.lhs > 0.0 ? std::abs(r.lhs - r.rhs) / r.lhs : std::abs(r.rhs);
  return r;
}

std::vector<double> indicator_xi_grid(double xi_max, double support_length) {
  if (!(xi_max > 0.0) || !(support_length > 0.0)) {
    throw std::invalid_argument("indicator_xi_grid: xi_max and support length must be positive");
  }
  // |L|^2 is the transform of an autocorrelation supported on [-L, L], so a
  // spacing of pi / L resolves it.
  const auto n = static_cast<std::size_t>(std::ceil(xi_max * support_length / kPi)) + 1;
  return linspace(0.0, xi_max, std::max<std::size_t>(n, 2));
}

FreqIndicator::FreqIndicator(const TraceSet& traces, double sigma, std::vector<double> xi_grid,
                             double surface_weight, double c0)
    : receivers_(traces.receivers),
      components_(traces.components),
      c0_(c0) {
  if (traces.n_receivers() == 0) throw std::invalid_argument("freq_indicator: no receivers");
  if (xi_grid.empty() || xi_grid.front() < 0.0) {
    throw std::invalid_argument("freq_indicator: xi grid must start at a non-negative value");
  }
  weight_ = surface_weight / static_cast<double>(traces.n_receivers());
  spectra_ = fourier_laplace(traces, sigma, xi_grid);
  quad_ = trapezoid_weights(spectra_.xi_grid);
}

double FreqIndicator::operator()(const Vec3& z) const {
  std::vector<double> coef(receivers_.size());
  std::vector<double> delay(receivers_.size());
  for (std::size_t m = 0; m < receivers_.size(); ++m) {
    const double r = (receivers_[m] - z).norm();
    if (r < 1e-9) throw std::invalid_argument("freq_indicator: sampling point coincides with a receiver");
    coef[m] = weight_ / (4.0 * kPi * r);
    delay[m] = r / c0_;
  }
  const std::size_t comps = static_cast<std::size_t>(components_);
  const std::vector<double>& xi = spectra_.xi_grid;
  double integral = 0.0;
  std::vector<cd> sum(comps);
  for (std::size_t k = 0; k < xi.size(); ++k) {
    std::fill(sum.begin(), sum.end(), cd(0.0));
    for (std::size_t m = 0; m < receivers_.size(); ++m) {
      const cd phase = std::polar(coef[m], -xi[k] * delay[m]);
      for (std::size_t c = 0; c < comps; ++c) sum[c] += phase * spectra_.values[m * comps + c][k];
    }
    double p = 0.0;
    for (const cd& s : sum) p += std::norm(s);
    integral += quad_[k] * p;
  }
  return integral / kPi;
}

double freq_indicator(const TraceSet& traces, const Vec3& z, double sigma,
                      std::span<const double> xi_grid, double surface_weight, double c0) {
  FreqIndicator ind(traces, sigma, std::vector<double>(xi_grid.begin(), xi_grid.end()),
                    surface_weight, c0);
  return ind(z);
}

}  // namespace tdsm
