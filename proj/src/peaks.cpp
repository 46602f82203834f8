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
#include <stdexcept>

#include "tdsm/imaging.hpp"

namespace tdsm {

std::vector<Peak> locate_peaks(const IndicatorGrid& grid, double rel_threshold) {
  if (!(rel_threshold > 0.0 && rel_threshold <= 1.0)) {
    throw std::invalid_argument("locate_peaks: rel_threshold must lie in (0, 1]");
  }
  const SamplingGrid& g = grid.grid;
  const std::size_t size = g.size();
  if (grid.values.size() != size) throw std::invalid_argument("locate_peaks: value count mismatch");
  const double vmax = grid.max();
  std::vector<Peak> peaks;
  if (!(vmax > 0.0)) return peaks;
  const double cut = rel_threshold * vmax;

  std::vector<char> seen(size, 0);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> plateau;
  std::vector<std::size_t> nbrs;
  auto neighbours = [&](std::size_t l) {
    nbrs.clear();
    const auto ijk = g.unravel(l);
    for (int a = 0; a < g.dim; ++a) {
      auto lo = ijk;
      auto hi = ijk;
      if (ijk[a] > 0) {
        --lo[a];
        nbrs.push_back(g.index(lo));
      }
      if (ijk[a] + 1 < g.n) {
        ++hi[a];
        nbrs.push_back(g.index(hi));
      }
    }
  };

  for (std::size_t start = 0; start < size; ++start) {
    const double v = grid.values[start];
    if (seen[start] || v < cut) continue;
    // Flood the plateau of cells equal to v.
    plateau.clear();
    stack.assign(1, start);
    seen[start] = 1;
    bool strict = true;
    bool bordered = false;
    while (!stack.empty()) {
      const std::size_t l = stack.back();
      stack.pop_back();
      plateau.push_back(l);
      neighbours(l);
      for (std::size_t nb : nbrs) {
        const double w = grid.values[nb];
        if (w == v) {
          if (!seen[nb]) {
            seen[nb] = 1;
            stack.push_back(nb);
          }
        } else {
          bordered = true;
          if (w > v) strict = false;
        }
      }
    }
    if (!strict || !bordered) continue;
    Peak p;
    p.index = g.unravel(plateau.front());
    for (std::size_t l : plateau) p.index = std::min(p.index, g.unravel(l));
    p.point = g.point(g.index(p.index));
    p.value = v;
    peaks.push_back(p);
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.index < b.index;
  });
  return peaks;
}

IndicatorGrid normalize(const IndicatorGrid& grid) {
  const double vmax = grid.max();
  if (!(vmax > 0.0)) throw std::invalid_argument("normalize: grid maximum must be positive");
  IndicatorGrid out = grid;
  for (double& v : out.values) v /= vmax;
  return out;
}

}  // namespace tdsm
