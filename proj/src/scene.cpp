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

#include "tdsm/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tdsm {

double PhysicalConstants::c0() const { return 1.0 / std::sqrt(mu0 * eps0); }

void PhysicalConstants::validate() const {
  if (!(eps0 > 0.0) || !(mu0 > 0.0) || !std::isfinite(eps0) || !std::isfinite(mu0)) {
    throw ConfigError("constants: eps0 and mu0 must be positive");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("constants: sigma must be non-negative");
  }
}

bool Scatterer::contains(const Vec3& x, int dim) const {
  for (int a = 0; a < dim; ++a) {
    if (std::abs(x[a] - center[a]) > half_widths[a]) return false;
  }
  return true;
}

double Scatterer::volume(int dim) const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= 2.0 * half_widths[a];
  return v;
}

double ReceiverArray::surface_weight() const {
  return layout == ReceiverLayout::circle2d ? 2.0 * kPi * radius
                                            : 4.0 * kPi * radius * radius;
}

double ReceiverArray::angle(std::size_t m) const {
  const Vec3 d = positions.at(m) - center;
  double theta = std::atan2(d.y(), d.x());
  if (theta < 0.0) theta += 2.0 * kPi;
  return theta;
}

std::vector<Vec3> make_receiver_positions(const ReceiverArray& array) {
  std::vector<Vec3> out;
  if (array.layout == ReceiverLayout::circle2d) {
    out.reserve(array.count);
    for (std::size_t m = 0; m < array.count; ++m) {
      const double theta = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(array.count);
      out.emplace_back(array.center.x() + array.radius * std::cos(theta),
                       array.center.y() + array.radius * std::sin(theta), 0.0);
    }
    return out;
  }
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(array.count))));
  const double r = array.radius;
  const double step = 2.0 * r / static_cast<double>(side);
  out.reserve(6 * side * side);
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    for (double sign : {-1.0, 1.0}) {
      for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
          Vec3 p = array.center;
          p[axis] += sign * r;
          p[u] += -r + (static_cast<double>(i) + 0.5) * step;
          p[v] += -r + (static_cast<double>(j) + 0.5) * step;
          out.push_back(p);
        }
      }
    }
  }
  return out;
}

std::size_t SamplingGrid::size() const {
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= n;
  return total;
}

double SamplingGrid::coordinate(int axis, std::size_t l) const {
  return min[axis] + (static_cast<double>(l) + 0.5) * spacing(axis);
}

std::size_t SamplingGrid::index(const std::array<std::size_t, 3>& ijk) const {
  std::size_t idx = 0;
  for (int a = dim - 1; a >= 0; --a) idx = idx * n + ijk[a];
  return idx;
}

std::array<std::size_t, 3> SamplingGrid::unravel(std::size_t index) const {
  std::array<std::size_t, 3> ijk{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    ijk[a] = index % n;
    index /= n;
  }
  return ijk;
}

Vec3 SamplingGrid::point(std::size_t index) const {
  const auto ijk = unravel(index);
  Vec3 p = Vec3::Zero();
  for (int a = 0; a < dim; ++a) p[a] = coordinate(a, ijk[a]);
  return p;
}

std::vector<Vec3> SamplingGrid::points() const {
  std::vector<Vec3> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
  return out;
}

bool SamplingGrid::contains(const Vec3& x) const {
  for (int a = 0; a < dim; ++a) {
    if (x[a] < min[a] || x[a] > max[a]) return false;
  }
  return true;
}

double box_distance(const Scatterer& a, const Scatterer& b) {
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double gap =
        std::max(0.0, std::abs(a.center[k] - b.center[k]) - a.half_widths[k] - b.half_widths[k]);
    sum += gap * gap;
  }
  return std::sqrt(sum);
}

namespace {

std::string at(const char* what, std::size_t index) {
  return std::string(what) + "[" + std::to_string(index) + "]";
}

bool finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

Scene build_scene(const SceneDescription& d) {
  if (d.dim != 2 && d.dim != 3) throw ConfigError("scene: dim must be 2 or 3");
  d.constants.validate();

  Scene scene;
  scene.dim = d.dim;
  scene.constants = d.constants;
  scene.source = d.source;
  scene.receivers = d.receivers;
  scene.grid = d.grid;
  scene.scatterers = d.scatterers;
  const int dim = d.dim;

  // Flatten to the plane in 2D so distances never see a stray z.
  auto flatten = [dim](Vec3 v) {
    if (dim == 2) v.z() = 0.0;
    return v;
  };

  for (std::size_t j = 0; j < scene.scatterers.size(); ++j) {
    Scatterer& s = scene.scatterers[j];
    s.center = flatten(s.center);
    if (!finite(s.center)) throw ConfigError(at("scatterers", j) + ": center must be finite");
    for (int a = 0; a < dim; ++a) {
      if (!(s.half_widths[a] > 0.0) || !std::isfinite(s.half_widths[a])) {
        throw ConfigError(at("scatterers", j) + ": half widths must be positive");
      }
    }
    if (dim == 2) s.half_widths.z() = 0.0;
    if (!(s.eps_r > 0.0) || !std::isfinite(s.eps_r)) {
      throw ConfigError(at("scatterers", j) + ": eps_r must be positive");
    }
  }

  SamplingGrid& g = scene.grid;
  if (g.dim != dim) throw ConfigError("grid: dimension does not match the scene");
  if (g.n < 2) throw ConfigError("grid: n per axis must be at least 2");
  for (int a = 0; a < dim; ++a) {
    if (!(g.max[a] > g.min[a]) || !std::isfinite(g.min[a]) || !std::isfinite(g.max[a])) {
      throw ConfigError("grid: extents must satisfy min < max on every axis");
    }
  }
  if (dim == 2) {
    g.min.z() = 0.0;
    g.max.z() = 0.0;
  }
  for (std::size_t j = 0; j < scene.scatterers.size(); ++j) {
    if (!g.contains(scene.scatterers[j].center)) {
      throw ConfigError(at("scatterers", j) + ": center lies outside the sampling grid");
    }
  }

  ReceiverArray& rx = scene.receivers;
  if (rx.dim() != dim) throw ConfigError("receivers: layout does not match the scene dimension");
  rx.center = flatten(rx.center);
  if (!(rx.radius > 0.0) || !std::isfinite(rx.radius)) {
    throw ConfigError("receivers: radius must be positive");
  }
  if (rx.count == 0) throw ConfigError("receivers: count must be positive");
  if (rx.layout == ReceiverLayout::cube3d) {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(rx.count))));
    if (side * side != rx.count) {
      throw ConfigError("receivers: per-face count must be a perfect square");
    }
  }
  rx.positions = make_receiver_positions(rx);
  for (std::size_t m = 0; m < rx.positions.size(); ++m) {
    for (std::size_t j = 0; j < scene.scatterers.size(); ++j) {
      if (scene.scatterers[j].contains(rx.positions[m], dim)) {
        throw ConfigError(at("receivers", m) + ": placement inside scatterer " +
                          std::to_string(j));
      }
    }
  }

  SourceSpec& src = scene.source;
  src.location = flatten(src.location);
  if (!finite(src.location)) throw ConfigError("source: location must be finite");
  if (d.source_has_polarization) {
    src.polarization = flatten(src.polarization);
    if (!(src.polarization.norm() > 0.0)) {
      throw ConfigError("source: polarization must be non-zero");
    }
  }
  if (g.contains(src.location)) {
    throw ConfigError("source: placement inside the sampling grid extents");
  }
  for (std::size_t j = 0; j < scene.scatterers.size(); ++j) {
    if (scene.scatterers[j].contains(src.location, dim)) {
      throw ConfigError("source: placement inside scatterer " + std::to_string(j));
    }
  }
  try {
    src.pulse.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("pulse: ") + e.what());
  }

  scene.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scene.scatterers.size(); ++i) {
    for (std::size_t j = i + 1; j < scene.scatterers.size(); ++j) {
      scene.min_separation =
          std::min(scene.min_separation, box_distance(scene.scatterers[i], scene.scatterers[j]));
    }
  }
  return scene;
}

double permittivity_at(const Scene& scene, const Vec3& x) {
  double eps_r = 1.0;
  bool inside = false;
  for (const Scatterer& s : scene.scatterers) {
    if (s.contains(x, scene.dim)) {
      eps_r = inside ? std::max(eps_r, s.eps_r) : s.eps_r;
      inside = true;
    }
  }
  return eps_r * scene.constants.eps0;
}

}  // namespace tdsm
