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

#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "tdsm/config.hpp"
#include "tdsm/imaging.hpp"
#include "tdsm/pipeline.hpp"
#include "tdsm/waveform.hpp"
#include "tdsm/xform.hpp"

using namespace tdsm;

namespace {

const double kC0 = PhysicalConstants{}.c0();

SampledSignal decaying_exponential() {
  SampledSignal s;
  s.dt = 1e-3;
  s.values.resize(20000);
  for (std::size_t n = 0; n < s.size(); ++n) s.values[n] = std::exp(-s.time(n));
  return s;
}

// Receiver traces made of delayed Gaussian pulses with random amplitudes.
TraceSet synthetic_traces(const Scene& scene, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const PulseSpec p = PulseSpec::gaussian(kC0);
  TraceSet t(scene.receivers.positions, 2e-10, 1001, 1);
  for (std::size_t m = 0; m < t.n_receivers(); ++m) {
    for (int burst = 0; burst < 3; ++burst) {
      const double delay = 4.5e-8 + 2e-8 * (u(rng) + 1.0);
      const double amp = u(rng);
      for (std::size_t n = 0; n < t.n_samples; ++n) {
        t.at(m, n, 0) += amp * eval_pulse(n * t.dt - delay, p);
      }
    }
  }
  return t;
}

}  // namespace

TEST_CASE("transform of exp(-t) at xi = 0") {
  const std::vector<double> xi = {0.0};
  const Spectrum s = fourier_laplace(decaying_exponential(), 0.0, xi);
  CHECK(std::abs(s.values[0][0] - 1.0) < 1e-4);
  // With damping sigma the exact value is 1 / (1 + sigma).
  const Spectrum d = fourier_laplace(decaying_exponential(), 0.5, xi);
  CHECK(std::abs(d.values[0][0] - 1.0 / 1.5) < 1e-4);
}

TEST_CASE("zero signal, linearity and conjugate symmetry") {
  const SampledSignal f = decaying_exponential();
  SampledSignal g = f;
  for (std::size_t n = 0; n < g.size(); ++n) g.values[n] = std::sin(3.0 * g.time(n)) * f.values[n];
  SampledSignal zero = f;
  std::fill(zero.values.begin(), zero.values.end(), 0.0);
  const std::vector<double> xi = {-7.0, -1.0, 0.0, 1.0, 7.0};
  const Spectrum zs = fourier_laplace(zero, 0.3, xi);
  for (const auto& v : zs.values[0]) CHECK(std::abs(v) == 0.0);

  SampledSignal mix = f;
  for (std::size_t n = 0; n < f.size(); ++n) mix.values[n] = 2.0 * f.values[n] - 3.0 * g.values[n];
  const Spectrum a = fourier_laplace(f, 0.3, xi);
  const Spectrum b = fourier_laplace(g, 0.3, xi);
  const Spectrum c = fourier_laplace(mix, 0.3, xi);
  for (std::size_t k = 0; k < xi.size(); ++k) {
    CHECK(std::abs(c.values[0][k] - (2.0 * a.values[0][k] - 3.0 * b.values[0][k])) < 1e-12);
  }
  CHECK(std::abs(a.values[0][0] - std::conj(a.values[0][4])) < 1e-12);
  CHECK(std::abs(b.values[0][1] - std::conj(b.values[0][3])) < 1e-12);
  CHECK_THROWS_AS(fourier_laplace(f, -1.0, xi), std::invalid_argument);
  const std::vector<double> unsorted = {1.0, 0.0};
  CHECK_THROWS_AS(fourier_laplace(f, 0.0, unsorted), std::invalid_argument);
}

TEST_CASE("shift property") {
  const PulseSpec p = PulseSpec::gaussian(kC0, 8.0 / (2.0 * kC0));  // t0 = 8a
  const double dt = p.envelope_width() / 20.0;
  const SampledSignal f = sample_pulse(p, dt, 400);
  const std::size_t k = 40;  // a = 2 envelope widths, where f < e^-36
  SampledSignal g;
  g.dt = dt;
  g.values.assign(f.values.begin() + k, f.values.end());
  g.values.resize(f.size(), 0.0);
  const double a = k * dt;
  const double sigma = 2e7;
  const std::vector<double> xi = {0.3 * p.angular_frequency(), p.angular_frequency(), 2.0 * p.angular_frequency()};
  const Spectrum lf = fourier_laplace(f, sigma, xi);
  const Spectrum lg = fourier_laplace(g, sigma, xi);
  for (std::size_t q = 0; q < xi.size(); ++q) {
    const std::complex<double> omega(xi[q], sigma);
    const std::complex<double> expect = std::exp(std::complex<double>(0.0, -1.0) * omega * a) * lf.values[0][q];
    CHECK(std::abs(lg.values[0][q] - expect) <= 1e-6 * std::abs(expect));
  }
}

TEST_CASE("Parseval residual of the Gaussian pulse") {
  const PulseSpec p = PulseSpec::gaussian(kC0);
  const SampledSignal s = sample_pulse(p, p.envelope_width() / 40.0, 641);
  const ParsevalResult r0 = parseval_residual(s, 0.0, 6.0 * p.angular_frequency(), 4001);
  CHECK(r0.residual < 1e-3);
  CHECK_FALSE(r0.under_resolved);
  SampledSignal twice = s;
  for (double& v : twice.values) v *= 2.0;
  const ParsevalResult r2 = parseval_residual(twice, 0.0, 6.0 * p.angular_frequency(), 4001);
  CHECK(r2.residual == doctest::Approx(r0.residual).epsilon(1e-9));
  const ParsevalResult rs = parseval_residual(s, 2e7, 6.0 * p.angular_frequency(), 4001);
  CHECK(rs.residual < 1e-3);
  CHECK(rs.lhs < r0.lhs);
  // Truncating the band flags the tail.
  CHECK(parseval_residual(s, 0.0, 1.0 * p.angular_frequency(), 1001).under_resolved);
  // A record cut mid-pulse is refused.
  SampledSignal cut = s;
  cut.values.resize(160);
  CHECK_THROWS_AS(parseval_residual(cut, 0.0, 6.0 * p.angular_frequency(), 101), std::invalid_argument);
}

TEST_CASE("frequency indicator: zero traces, quadratic scaling, receiver guard") {
  const ExperimentConfig cfg = parse_config(preset_text("paper_tm"));
  const TraceSet t = synthetic_traces(cfg.scene, 1);
  TraceSet zero = t;
  std::fill(zero.values.begin(), zero.values.end(), 0.0);
  TraceSet scaled = t;
  for (double& v : scaled.values) v *= 3.0;
  const std::vector<double> xi = indicator_xi_grid(6.0 * 2.0 * kPi * kC0, 5e-7);
  const double w = cfg.scene.receivers.surface_weight();
  const Vec3 z(0.2, -0.4, 0.0);
  CHECK(freq_indicator(zero, z, 0.0, xi, w, kC0) == 0.0);
  const double base = freq_indicator(t, z, 0.0, xi, w, kC0);
  CHECK(base > 0.0);
  CHECK(freq_indicator(scaled, z, 0.0, xi, w, kC0) == doctest::Approx(9.0 * base).epsilon(1e-12));
  CHECK_THROWS_AS(freq_indicator(t, cfg.scene.receivers.positions[3], 0.0, xi, w, kC0), std::invalid_argument);
}

TEST_CASE("time and frequency indicators agree on synthetic traces") {
  const ExperimentConfig cfg = parse_config(preset_text("paper_tm"));
  for (double sigma : {0.0, 2e7}) {
    ExperimentConfig c = cfg;
    c.imaging.sigma = sigma;
    const TraceSet t = synthetic_traces(c.scene, 2);
    const FreqIndicator freq = make_freq_indicator(c, t);
    const IndicatorGrid grid = image_dsm(c, t);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    double worst = 0.0;
    for (int k = 0; k < 25; ++k) {
      const Vec3 z(u(rng), u(rng), 0.0);
      const double it = time_indicator_at(t, z, sigma, kC0, imaging_time(c, t), c.scene.receivers.surface_weight());
      worst = std::max(worst, std::abs(it - freq(z)) / grid.max());
    }
    MESSAGE("sigma " << sigma << " worst scaled difference " << worst);
    CHECK(worst <= 1e-2);
  }
}

TEST_CASE("time and frequency indicators agree at (0, 1.5) on simulated TM data") {
  const ExperimentConfig cfg = parse_config(preset_text("paper_tm"));
  const TraceSet t = simulate(cfg).traces;
  const Vec3 z(0.0, 1.5, 0.0);
  const double it = time_indicator_at(t, z, 0.0, kC0, imaging_time(cfg, t), cfg.scene.receivers.surface_weight());
  const double fi = make_freq_indicator(cfg, t)(z);
  CHECK(std::abs(it - fi) <= 0.01 * it);
}
