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

#include "tdsm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "tdsm/pipeline.hpp"
#include "tdsm/specfun.hpp"
#include "tdsm/waveform.hpp"
#include "tdsm/xform.hpp"

namespace tdsm {

Check make_check(std::string name, double measured, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tolerance;
  c.pass = measured <= tolerance;  // NaN fails
  return c;
}

std::string format_check(const Check& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "CHECK %s %.6g %.6g %s", c.name.c_str(), c.measured, c.tolerance,
                c.pass ? "PASS" : "FAIL");
  return buf;
}

Check check_lemma1(int draws, std::uint64_t seed) {
  const PhysicalConstants pc;
  const double c0 = pc.c0();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int k = 0; k < draws; ++k) {
    Vec3 dir(gauss(rng), gauss(rng), gauss(rng));
    dir.normalize();
    const Vec3 z = (0.1 + 2.9 * unit(rng)) * dir;
    const double s = 5.0 * unit(rng);
    const double sigma = s * c0 / z.norm();
    const Dyadic3 closed = lemma1_closed_form(z, sigma, c0);
    const Dyadic3 quad = sphere_quadrature_oracle(
        [&](const Vec3& x) {
          return Dyadic3((Dyadic3::Identity() - x * x.transpose()) * std::exp(sigma / c0 * x.dot(z)));
        },
        40);
    worst = std::max(worst, (closed - quad).norm() / quad.norm());
  }
  return make_check("bessel.lemma1", worst, 1e-8);
}

std::vector<Check> check_parseval() {
  const PhysicalConstants pc;
  const PulseSpec pulse = PulseSpec::gaussian(pc.c0() / 1.0);
  const double a = pulse.envelope_width();
  const double dt = a / 40.0;
  const SampledSignal signal = sample_pulse(pulse, dt, static_cast<std::size_t>(16.0 * 40.0) + 1);
  const double xi_max = 8.0 * pulse.angular_frequency();
  std::vector<Check> out;
  for (double sigma : {0.0, 2e7}) {
    const ParsevalResult r = parseval_residual(signal, sigma, xi_max, 4001);
    out.push_back(make_check(sigma == 0.0 ? "parseval.sigma_0" : "parseval.sigma_2e7", r.residual, 1e-3));
  }
  return out;
}

Check check_equivalence(const ExperimentConfig& config, const TraceSet& traces,
                        const IndicatorGrid& clean, int points, std::uint64_t seed) {
  const Scene& s = config.scene;
  const FreqIndicator freq = make_freq_indicator(config, traces);
  const double T = imaging_time(config, traces);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = clean.max();
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    Vec3 z = Vec3::Zero();
    for (int a = 0; a < s.dim; ++a) z[a] = s.grid.min[a] + unit(rng) * (s.grid.max[a] - s.grid.min[a]);
    const double it = time_indicator_at(traces, z, config.imaging.sigma, s.constants.c0(), T,
                                        s.receivers.surface_weight());
    worst = std::max(worst, std::abs(it - freq(z)) / scale);
  }
  return make_check("equivalence.time_vs_freq", worst, 1e-2);
}

std::vector<Check> check_noise_stability(const ExperimentConfig& config, const TraceSet& traces,
                                         const IndicatorGrid& clean) {
  const std::vector<double> deltas = {0.1, 0.2, 0.4};
  const int seeds = 5;
  const double cell = config.scene.grid.spacing(0);
  std::vector<double> mean(deltas.size(), 0.0);
  double worst_error = 0.0;
  double worst_count = 0.0;
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    for (int k = 0; k < seeds; ++k) {
      const TraceSet noisy = add_noise(traces, deltas[d], static_cast<std::uint64_t>(k + 1));
      const IndicatorGrid g = image_dsm(config, noisy);
      double diff = 0.0;
      for (std::size_t l = 0; l < g.values.size(); ++l) {
        diff = std::max(diff, std::abs(g.values[l] - clean.values[l]));
      }
      mean[d] += diff / seeds;
      if (deltas[d] == 0.4) {
        const auto peaks = locate_peaks(g, config.imaging.rel_threshold);
        worst_error = std::max(worst_error, worst_localization_error(peaks, config.scene));
        worst_count = std::max(worst_count, std::abs(double(peaks.size()) -
                                                     double(config.scene.scatterers.size())));
      }
    }
  }
  const double c = mean[0] / deltas[0];
  std::vector<Check> out;
  out.push_back(make_check("noise.growth_delta_0.2", mean[1] / (c * deltas[1]), 2.0));
  out.push_back(make_check("noise.growth_delta_0.4", mean[2] / (c * deltas[2]), 2.0));
  out.push_back(make_check("noise.peak_count_delta_0.4", worst_count, 0.0));
  out.push_back(make_check("noise.localization_delta_0.4", worst_error, 3.0 * cell + 1e-9));
  return out;
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"bessel", "parseval", "equivalence",
                                                 "noise-stability", "all"};
  return names;
}

std::vector<Check> run_verify(const std::string& suite, const ExperimentConfig& tm_config) {
  const auto& names = verify_suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
  }
  const bool all = suite == "all";
  std::vector<Check> out;
  if (all || suite == "bessel") out.push_back(check_lemma1(50, 7));
  if (all || suite == "parseval") {
    for (auto& c : check_parseval()) out.push_back(c);
  }
  if (all || suite == "equivalence" || suite == "noise-stability") {
    const TraceSet traces = simulate(tm_config).traces;
    const IndicatorGrid clean = image_dsm(tm_config, traces);
    if (all || suite == "equivalence") out.push_back(check_equivalence(tm_config, traces, clean, 25, 11));
    if (all || suite == "noise-stability") {
      for (auto& c : check_noise_stability(tm_config, traces, clean)) out.push_back(c);
    }
  }
  return out;
}

}  // namespace tdsm
