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

#include "tdsm/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tdsm/common.hpp"

namespace tdsm {

namespace {

// Mollifier weight exp(-s^2) drops below 1e-12 of its peak beyond this |s|.
const double kMollifierCutoff = std::sqrt(12.0 * std::log(10.0));
constexpr double kSawtoothTolerance = 1e-10;
constexpr int kMaxSimpsonDepth = 50;

template <typename F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    return left + right + diff / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, kMaxSimpsonDepth);
}

// Integrates weight(s) * saw(t + s / sqrt(c)) over |s| <= cutoff, splitting at
// the sawtooth jumps so every piece is smooth.
template <typename W>
double mollified_sawtooth_integral(double t, const PulseSpec& spec, const W& weight) {
  const double rate = spec.sawtooth_rate();
  const double root_c = std::sqrt(spec.smoothing);
  const double lo = -kMollifierCutoff;
  const double hi = kMollifierCutoff;

  // Jumps sit at tau_k = (2k - 1) pi / rate.
  const double tau_lo = t + lo / root_c;
  const double tau_hi = t + hi / root_c;
  const double period = 2.0 * kPi / rate;
  std::vector<double> cuts{lo};
  for (double k = std::ceil((tau_lo + 0.5 * period) / period);; k += 1.0) {
    const double tau = (2.0 * k - 1.0) * kPi / rate;
    if (tau >= tau_hi) break;
    const double s = (tau - t) * root_c;
    if (s > cuts.back()) cuts.push_back(s);
  }
  cuts.push_back(hi);

  const double piece_tol = kSawtoothTolerance / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    // Evaluate the sawtooth at the piece midpoint branch so the endpoints
    // take the one-sided limit instead of jumping.
    const double mid_tau = t + 0.5 * (a + b) / root_c;
    const double u_mid = (rate * mid_tau + kPi) / (2.0 * kPi);
    const double branch = std::floor(u_mid);
    auto integrand = [&](double s) {
      const double tau = t + s / root_c;
      const double u = (rate * tau + kPi) / (2.0 * kPi);
      return weight(s) * (u - branch - 0.5);
    };
    total += adaptive_simpson(integrand, a, b, piece_tol);
  }
  return total;
}

}  // namespace

std::string to_string(PulseKind kind) {
  return kind == PulseKind::gaussian_sine ? "gaussian_sine" : "smooth_sawtooth";
}

PulseKind pulse_kind_from_string(const std::string& name) {
  if (name == "gaussian_sine") return PulseKind::gaussian_sine;
  if (name == "smooth_sawtooth") return PulseKind::smooth_sawtooth;
  throw std::invalid_argument("unknown pulse kind '" + name + "'");
}

PulseSpec PulseSpec::gaussian(double f0, double t0) {
  PulseSpec spec;
  spec.kind = PulseKind::gaussian_sine;
  spec.f0 = f0;
  spec.t0 = t0 < 0.0 ? 4.0 / (2.0 * f0) : t0;
  return spec;
}

PulseSpec PulseSpec::sawtooth(double f0, double smoothing) {
  PulseSpec spec;
  spec.kind = PulseKind::smooth_sawtooth;
  spec.f0 = f0;
  spec.smoothing = smoothing;
  return spec;
}

double PulseSpec::angular_frequency() const { return 2.0 * kPi * f0; }

double PulseSpec::sawtooth_rate() const { return kPi * f0; }

void PulseSpec::validate() const {
  if (!(f0 > 0.0) || !std::isfinite(f0)) {
    throw std::invalid_argument("pulse f0 must be positive and finite");
  }
  if (kind == PulseKind::gaussian_sine) {
    // The hard zero at t < 0 truncates the Gaussian; t0 >= 3a keeps the jump below e^-9.
    if (!(t0 >= 3.0 * envelope_width()) || !std::isfinite(t0)) {
      throw std::invalid_argument("gaussian pulse requires t0 >= 3a = 3/(2 f0)");
    }
  } else if (!(smoothing > 0.0) || !std::isfinite(smoothing)) {
    throw std::invalid_argument("sawtooth smoothing must be positive and finite");
  }
}

double eval_gaussian_pulse(double t, const PulseSpec& spec) {
  if (t < 0.0) return 0.0;
  const double a = spec.envelope_width();
  const double s = t - spec.t0;
  return std::exp(-(s * s) / (a * a)) * std::sin(spec.angular_frequency() * s);
}

double eval_smooth_sawtooth(double t, const PulseSpec& spec) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("sawtooth evaluated at non-finite time");
  }
  if (t < 0.0) return 0.0;
  const double integral =
      mollified_sawtooth_integral(t, spec, [](double s) { return std::exp(-s * s); });
  return integral / std::sqrt(spec.smoothing);
}

double eval_pulse(double t, const PulseSpec& spec) {
  return spec.kind == PulseKind::gaussian_sine ? eval_gaussian_pulse(t, spec)
                                               : eval_smooth_sawtooth(t, spec);
}

double eval_pulse_derivative(double t, const PulseSpec& spec) {
  if (spec.kind == PulseKind::gaussian_sine) {
    if (t < 0.0) return 0.0;
    const double a = spec.envelope_width();
    const double w = spec.angular_frequency();
    const double s = t - spec.t0;
    const double env = std::exp(-(s * s) / (a * a));
    return env * (w * std::cos(w * s) - 2.0 * s / (a * a) * std::sin(w * s));
  }
  if (!std::isfinite(t)) {
    throw std::invalid_argument("sawtooth evaluated at non-finite time");
  }
  if (t < 0.0) return 0.0;
  // d/dt int saw(tau) exp(-c (t - tau)^2) dtau = 2 int saw(t + s/sqrt(c)) s exp(-s^2) ds
  return 2.0 * mollified_sawtooth_integral(t, spec,
                                           [](double s) { return s * std::exp(-s * s); });
}

SampledSignal sample_pulse(const PulseSpec& spec, double dt, std::size_t n) {
  if (!(dt > 0.0) || n < 2) {
    throw std::invalid_argument("sample_pulse requires dt > 0 and n >= 2");
  }
  SampledSignal out;
  out.dt = dt;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = eval_pulse(static_cast<double>(k) * dt, spec);
  }
  return out;
}

Spectrum spectrum(const SampledSignal& signal, std::span<const double> f_grid) {
  signal.validate();
  if (f_grid.empty()) {
    throw std::invalid_argument("spectrum requires a non-empty frequency grid");
  }
  for (std::size_t k = 0; k < f_grid.size(); ++k) {
    if (!std::isfinite(f_grid[k]) || (k > 0 && !(f_grid[k] > f_grid[k - 1]))) {
      throw std::invalid_argument("frequency grid must be finite and strictly increasing");
    }
  }
  Spectrum out;
  out.sigma = 0.0;
  out.xi_grid.reserve(f_grid.size());
  out.values.assign(1, std::vector<std::complex<double>>(f_grid.size()));
  const std::size_t n = signal.size();
  for (std::size_t k = 0; k < f_grid.size(); ++k) {
    const double xi = 2.0 * kPi * f_grid[k];
    out.xi_grid.push_back(xi);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
      acc += w * signal.values[i] * std::polar(1.0, -xi * signal.time(i));
    }
    out.values[0][k] = acc * signal.dt;
  }
  return out;
}

void SampledSignal::validate() const {
  if (!(dt > 0.0) || values.size() < 2) {
    throw std::invalid_argument("sampled signal requires dt > 0 and at least 2 samples");
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linspace requires n >= 2");
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace tdsm
