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

#ifndef TDSM_SCENE_HPP
#define TDSM_SCENE_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "tdsm/common.hpp"
#include "tdsm/waveform.hpp"

namespace tdsm {

struct PhysicalConstants {
  double eps0 = 8.8541878128e-12;  // F/m
  double mu0 = 1.25663706212e-6;   // H/m
  double sigma = 0.0;              // Fourier-Laplace damping, 1/s

  double c0() const;
  void validate() const;
};

/// Axis-aligned dielectric box.
struct Scatterer {
  Vec3 center = Vec3::Zero();
  Vec3 half_widths = Vec3::Zero();
  double eps_r = 1.0;

  bool contains(const Vec3& x, int dim) const;
  double volume(int dim) const;
};

enum class ReceiverLayout { circle2d, cube3d };

struct ReceiverArray {
  ReceiverLayout layout = ReceiverLayout::circle2d;
  Vec3 center = Vec3::Zero();
  double radius = 0.0;          // circle radius, or cube half width
  std::size_t count = 0;        // circle: N_s; cube: receivers per face
  std::vector<Vec3> positions;  // derived

  int dim() const { return layout == ReceiverLayout::circle2d ? 2 : 3; }
  /// 2 pi R for the circle, 4 pi R^2 for the cube.
  double surface_weight() const;
  /// Polar angle in [0, 2 pi) of a circle receiver about the array center.
  double angle(std::size_t m) const;
};

/// Builds receiver positions. Circle: receiver 0 at angle 0, equal spacing.
/// Cube: per-face n x n lattice offset half a step from the edges.
std::vector<Vec3> make_receiver_positions(const ReceiverArray& array);

struct SamplingGrid {
  int dim = 2;
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();
  std::size_t n = 0;  // cells per axis

  std::size_t size() const;
  double spacing(int axis) const { return (max[axis] - min[axis]) / static_cast<double>(n); }
  /// Cell-center coordinate along an axis: min + (l + 1/2) h.
  double coordinate(int axis, std::size_t l) const;
  /// Linear index with x fastest.
  std::size_t index(const std::array<std::size_t, 3>& ijk) const;
  std::array<std::size_t, 3> unravel(std::size_t index) const;
  Vec3 point(std::size_t index) const;
  std::vector<Vec3> points() const;
  bool contains(const Vec3& x) const;
};

struct SourceSpec {
  Vec3 location = Vec3::Zero();
  Vec3 polarization = Vec3::Zero();  // TM: (p1, p2, 0); TE: unused; 3D: p
  PulseSpec pulse;
};

/// Unvalidated scene description as it comes from a config.
struct SceneDescription {
  int dim = 2;
  PhysicalConstants constants;
  std::vector<Scatterer> scatterers;
  SourceSpec source;
  ReceiverArray receivers;  // positions are derived by build_scene
  SamplingGrid grid;
  bool source_has_polarization = true;  // false for the TE curl source
};

struct Scene {
  int dim = 2;
  PhysicalConstants constants;
  std::vector<Scatterer> scatterers;
  SourceSpec source;
  ReceiverArray receivers;
  SamplingGrid grid;
  double min_separation = 0.0;  // +inf for fewer than two scatterers
};

/// Euclidean distance between two closed axis-aligned boxes (0 when they touch).
double box_distance(const Scatterer& a, const Scatterer& b);

/// Validates every invariant and derives receivers and the minimum separation.
/// Throws ConfigError naming the first violated invariant and element index.
Scene build_scene(const SceneDescription& description);

/// eps_r * eps0 inside any (closed) box, taking the largest eps_r where boxes
/// overlap; eps0 elsewhere.
double permittivity_at(const Scene& scene, const Vec3& x);

}  // namespace tdsm

#endif  // TDSM_SCENE_HPP
