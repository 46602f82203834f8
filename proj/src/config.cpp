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

#include "tdsm/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace tdsm {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "scene.dim", "scene.mode",
      "scene.constants.eps0", "scene.constants.mu0",
      "scene.pulse.kind", "scene.pulse.f0", "scene.pulse.wavelength", "scene.pulse.t0",
      "scene.pulse.smoothing",
      "scene.source.location", "scene.source.polarization",
      "scene.receivers.center", "scene.receivers.radius", "scene.receivers.count",
      "scene.grid.min", "scene.grid.max", "scene.grid.n",
      "solver.h", "solver.dt", "solver.duration", "solver.padding", "solver.absorber_cells",
      "solver.absorber_order", "solver.absorber_reflection", "solver.mollifier_cells",
      "solver.spatial_order", "solver.record_stride",
      "born.sigma", "born.xi_max", "born.n_freq", "born.duration", "born.n_steps",
      "imaging.sigma", "imaging.T", "imaging.rel_threshold", "imaging.tfm_t0",
      "noise.delta", "noise.seed",
      "aperture.theta_min", "aperture.theta_max",
      "output.traces", "output.grid", "output.pgm"};
  return keys;
}

// scene.scatterers.<k>.<field>; returns false when the key has another shape.
bool scatterer_key(const std::string& key, std::size_t& index, std::string& field) {
  const std::string prefix = "scene.scatterers.";
  if (key.rfind(prefix, 0) != 0) return false;
  const std::string rest = key.substr(prefix.size());
  const auto dot = rest.find('.');
  if (dot == std::string::npos || dot == 0) return false;
  const std::string num = rest.substr(0, dot);
  for (char ch : num) {
    if (ch < '0' || ch > '9') return false;
  }
  if (num.size() > 1 && num[0] == '0') return false;
  field = rest.substr(dot + 1);
  if (field != "center" && field != "size" && field != "eps_r") return false;
  index = std::stoul(num);
  return true;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const auto it = entries_.find(key);
    std::string where = it == entries_.end() ? "" : " (line " + std::to_string(it->second.line) + ")";
    throw ConfigError(key + ": " + what + where);
  }

  std::string text(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) fail(key, "missing required key");
    return it->second.value;
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  double number(const std::string& key) const {
    const std::string s = text(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(key, "expected a finite number, got '" + s + "'");
    }
    return v;
  }
  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::uint64_t integer(const std::string& key) const {
    const std::string s = text(key);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      fail(key, "expected a non-negative integer, got '" + s + "'");
    }
    return v;
  }
  std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  Vec3 vec(const std::string& key, int dim) const {
    std::istringstream in(text(key));
    std::vector<double> parts;
    std::string tok;
    while (in >> tok) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        fail(key, "malformed number '" + tok + "'");
      }
      parts.push_back(v);
    }
    if (static_cast<int>(parts.size()) != dim) {
      fail(key, "expected " + std::to_string(dim) + " components, got " +
                    std::to_string(parts.size()));
    }
    Vec3 out = Vec3::Zero();
    for (int a = 0; a < dim; ++a) out[a] = parts[a];
    return out;
  }
  Vec3 vec(const std::string& key, int dim, const Vec3& fallback) const {
    return has(key) ? vec(key, dim) : fallback;
  }

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& content) {
  std::map<std::string, Entry> entries;
  std::istringstream in(content);
  std::string raw;
  int line_no = 0;
  std::map<std::size_t, std::set<std::string>> scatterer_fields;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::size_t index = 0;
    std::string field;
    if (scatterer_key(key, index, field)) {
      scatterer_fields[index].insert(field);
    } else if (known_keys().count(key) == 0) {
      throw ConfigError(key + ": unknown key (line " + std::to_string(line_no) + ")");
    }
    if (value.empty()) {
      throw ConfigError(key + ": empty value (line " + std::to_string(line_no) + ")");
    }
    if (entries.count(key) != 0) {
      throw ConfigError(key + ": duplicate key (line " + std::to_string(line_no) + ")");
    }
    entries[key] = {value, line_no};
  }
  const Reader r(std::move(entries));

  ExperimentConfig cfg;
  SceneDescription d;
  const std::uint64_t dim = r.integer("scene.dim");
  if (dim != 2 && dim != 3) r.fail("scene.dim", "must be 2 or 3");
  d.dim = static_cast<int>(dim);

  const std::string mode = r.text("scene.mode", "tm");
  if (d.dim == 3) {
    if (r.has("scene.mode")) r.fail("scene.mode", "only meaningful for 2D scenes");
  } else if (mode == "tm") {
    cfg.mode = Mode2D::TM;
  } else if (mode == "te") {
    cfg.mode = Mode2D::TE;
  } else {
    r.fail("scene.mode", "expected tm or te, got '" + mode + "'");
  }

  d.constants.eps0 = r.number("scene.constants.eps0", d.constants.eps0);
  d.constants.mu0 = r.number("scene.constants.mu0", d.constants.mu0);
  d.constants.sigma = r.number("imaging.sigma", 0.0);
  if (!(d.constants.eps0 > 0.0)) r.fail("scene.constants.eps0", "must be positive");
  if (!(d.constants.mu0 > 0.0)) r.fail("scene.constants.mu0", "must be positive");
  const double c0 = d.constants.c0();

  // Pulse.
  PulseKind kind;
  try {
    kind = pulse_kind_from_string(r.text("scene.pulse.kind", "gaussian_sine"));
  } catch (const std::invalid_argument& e) {
    r.fail("scene.pulse.kind", e.what());
  }
  if (r.has("scene.pulse.f0") == r.has("scene.pulse.wavelength")) {
    r.fail("scene.pulse.f0", "give exactly one of scene.pulse.f0 and scene.pulse.wavelength");
  }
  double f0 = 0.0;
  if (r.has("scene.pulse.f0")) {
    f0 = r.number("scene.pulse.f0");
    if (!(f0 > 0.0)) r.fail("scene.pulse.f0", "must be positive");
  } else {
    const double lambda = r.number("scene.pulse.wavelength");
    if (!(lambda > 0.0)) r.fail("scene.pulse.wavelength", "must be positive");
    f0 = c0 / lambda;
  }
  if (kind == PulseKind::gaussian_sine) {
    if (r.has("scene.pulse.smoothing")) r.fail("scene.pulse.smoothing", "only used by smooth_sawtooth");
    const double t0 = r.number("scene.pulse.t0", -1.0);
    if (r.has("scene.pulse.t0") && !(t0 >= 0.0)) r.fail("scene.pulse.t0", "must be non-negative");
    d.source.pulse = PulseSpec::gaussian(f0, t0);
  } else {
    if (r.has("scene.pulse.t0")) r.fail("scene.pulse.t0", "only used by gaussian_sine");
    const double c = r.number("scene.pulse.smoothing", 1e18);
    if (!(c > 0.0)) r.fail("scene.pulse.smoothing", "must be positive");
    d.source.pulse = PulseSpec::sawtooth(f0, c);
  }

  // Source and receivers.
  d.source.location = r.vec("scene.source.location", d.dim);
  d.source_has_polarization = !(d.dim == 2 && cfg.mode == Mode2D::TE);
  if (d.source_has_polarization) {
    d.source.polarization = r.vec("scene.source.polarization", d.dim);
  } else if (r.has("scene.source.polarization")) {
    r.fail("scene.source.polarization", "the TE source has no polarization");
  }
  d.receivers.layout = d.dim == 2 ? ReceiverLayout::circle2d : ReceiverLayout::cube3d;
  d.receivers.center = r.vec("scene.receivers.center", d.dim, Vec3::Zero());
  d.receivers.radius = r.number("scene.receivers.radius");
  d.receivers.count = r.integer("scene.receivers.count");

  d.grid.dim = d.dim;
  d.grid.min = r.vec("scene.grid.min", d.dim);
  d.grid.max = r.vec("scene.grid.max", d.dim);
  d.grid.n = r.integer("scene.grid.n");

  // Scatterers: indices must run 0..k-1 with all three fields.
  std::size_t expect = 0;
  for (const auto& [index, fields] : scatterer_fields) {
    const std::string base = "scene.scatterers." + std::to_string(index);
    if (index != expect) {
      throw ConfigError(base + ": scatterer indices must be contiguous from 0");
    }
    ++expect;
    for (const char* f : {"center", "size", "eps_r"}) {
      if (fields.count(f) == 0) r.fail(base + "." + f, "missing required key");
    }
    Scatterer s;
    s.center = r.vec(base + ".center", d.dim);
    s.half_widths = 0.5 * r.vec(base + ".size", d.dim);
    s.eps_r = r.number(base + ".eps_r");
    d.scatterers.push_back(s);
  }

  cfg.scene = build_scene(d);

  // Solver.
  SolverParams& sp = cfg.solver;
  sp.h = r.number("solver.h", sp.h);
  sp.dt = r.number("solver.dt", sp.dt);
  cfg.duration = r.number("solver.duration", cfg.duration);
  sp.padding = r.number("solver.padding", sp.padding);
  sp.absorber_cells = static_cast<int>(r.integer("solver.absorber_cells", 20));
  sp.absorber_order = r.number("solver.absorber_order", sp.absorber_order);
  sp.absorber_reflection = r.number("solver.absorber_reflection", sp.absorber_reflection);
  sp.mollifier_cells = r.number("solver.mollifier_cells", sp.mollifier_cells);
  sp.spatial_order = static_cast<int>(r.integer("solver.spatial_order", 4));
  sp.record_stride = static_cast<int>(r.integer("solver.record_stride", 1));
  if (!(sp.h > 0.0)) r.fail("solver.h", "must be positive");
  if (!(sp.dt > 0.0)) r.fail("solver.dt", "must be positive");
  if (!(cfg.duration > 0.0)) r.fail("solver.duration", "must be positive");
  if (!(sp.padding >= 0.0)) r.fail("solver.padding", "must be non-negative");
  if (!(sp.absorber_order >= 0.0)) r.fail("solver.absorber_order", "must be non-negative");
  if (!(sp.absorber_reflection > 0.0 && sp.absorber_reflection < 1.0)) {
    r.fail("solver.absorber_reflection", "must lie in (0, 1)");
  }
  if (!(sp.mollifier_cells > 0.0)) r.fail("solver.mollifier_cells", "must be positive");
  if (sp.spatial_order != 2 && sp.spatial_order != 4) r.fail("solver.spatial_order", "must be 2 or 4");
  if (sp.record_stride < 1) r.fail("solver.record_stride", "must be at least 1");

  // Born.
  BornParams& bp = cfg.born;
  bp.sigma = r.number("born.sigma", bp.sigma);
  bp.xi_max = r.number("born.xi_max", bp.xi_max);
  bp.n_freq = r.integer("born.n_freq", bp.n_freq);
  bp.duration = r.number("born.duration", bp.duration);
  bp.n_steps = r.integer("born.n_steps", bp.n_steps);
  if (!(bp.sigma >= 0.0)) r.fail("born.sigma", "must be non-negative");
  if (bp.n_freq < 2) r.fail("born.n_freq", "must be at least 2");
  if (!(bp.duration > 0.0)) r.fail("born.duration", "must be positive");
  if (bp.n_steps < 1) r.fail("born.n_steps", "must be at least 1");

  // Imaging, noise, aperture, outputs.
  cfg.imaging.sigma = d.constants.sigma;
  cfg.imaging.T = r.number("imaging.T", 0.0);
  cfg.imaging.rel_threshold = r.number("imaging.rel_threshold", cfg.imaging.rel_threshold);
  cfg.imaging.tfm_t0 = r.number("imaging.tfm_t0", -1.0);
  if (!(cfg.imaging.sigma >= 0.0)) r.fail("imaging.sigma", "must be non-negative");
  if (r.has("imaging.T") && !(cfg.imaging.T > 0.0)) r.fail("imaging.T", "must be positive");
  if (!(cfg.imaging.rel_threshold > 0.0 && cfg.imaging.rel_threshold <= 1.0)) {
    r.fail("imaging.rel_threshold", "must lie in (0, 1]");
  }
  if (r.has("imaging.tfm_t0") && !(cfg.imaging.tfm_t0 >= 0.0)) {
    r.fail("imaging.tfm_t0", "must be non-negative");
  }
  cfg.noise.delta = r.number("noise.delta", 0.0);
  cfg.noise.seed = r.integer("noise.seed", 1);
  if (!(cfg.noise.delta >= 0.0)) r.fail("noise.delta", "must be non-negative");

  if (r.has("aperture.theta_min") != r.has("aperture.theta_max")) {
    r.fail("aperture.theta_min", "give both aperture.theta_min and aperture.theta_max");
  }
  if (r.has("aperture.theta_min")) {
    cfg.aperture.set = true;
    cfg.aperture.theta_min = r.number("aperture.theta_min");
    cfg.aperture.theta_max = r.number("aperture.theta_max");
    if (!(cfg.aperture.theta_min <= cfg.aperture.theta_max)) {
      r.fail("aperture.theta_min", "must not exceed aperture.theta_max");
    }
  }
  cfg.output.traces = r.text("output.traces", "");
  cfg.output.grid = r.text("output.grid", "");
  cfg.output.pgm = r.text("output.pgm", "");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace tdsm
