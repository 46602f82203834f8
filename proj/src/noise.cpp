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
#include <random>
#include <stdexcept>

#include "tdsm/imaging.hpp"

namespace tdsm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double draw(std::uint64_t seed, std::uint64_t m, std::uint64_t n) {
  const std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ m) ^ n);
  std::mt19937_64 rng(key);
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng);
}

}  // namespace

TraceSet add_noise(const TraceSet& traces, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("add_noise: delta must be non-negative");
  }
  TraceSet out = traces;
  if (delta == 0.0) return out;
  const std::size_t comps = static_cast<std::size_t>(traces.components);
  auto magnitude = [&](std::size_t m, std::size_t n) {
    double s = 0.0;
    for (std::size_t c = 0; c < comps; ++c) s += traces.at(m, n, int(c)) * traces.at(m, n, int(c));
    return std::sqrt(s);
  };
  double peak = 0.0;
  for (std::size_t m = 0; m < traces.n_receivers(); ++m) {
    for (std::size_t n = 0; n < traces.n_samples; ++n) peak = std::max(peak, magnitude(m, n));
  }
  parallel_for(traces.n_receivers(), [&](std::size_t m) {
    for (std::size_t n = 0; n < traces.n_samples; ++n) {
      const double mag = magnitude(m, n);
      if (mag == 0.0) continue;
      const double scale = delta * draw(seed, m, n) * peak / mag;
      for (std::size_t c = 0; c < comps; ++c) out.at(m, n, int(c)) += scale * traces.at(m, n, int(c));
    }
  });
  return out;
}

}  // namespace tdsm
