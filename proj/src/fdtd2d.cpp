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

// Staggered leapfrog for the two 2D reductions of Maxwell's equations.
//
//   TM: Ez at nodes (i, j), Hx at (i, j+1/2), Hy at (i+1/2, j)
//   TE: Ex at (i+1/2, j), Ey at (i, j+1/2), Hz at (i+1/2, j+1/2)
//
// The dipole enters as a magnetic current M = -chi(t) p phi(x - y), which
// reproduces the curl source of the second-order equations. The outer layer
// is a split-field graded-conductivity absorber backed by a PEC wall.
//
// Spatial differences use the staggered stencil c1 (f(+1/2) - f(-1/2)) +
// c2 (f(+3/2) - f(-3/2)). Every array carries two rows of zero ghosts on each
// side, so the wide stencil needs no boundary branches and the two discrete
// curls remain exact negative adjoints of each other.

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <string>
#include <vector>

#include "tdsm/forward.hpp"
#include "tdsm/waveform.hpp"

namespace tdsm {

namespace {

constexpr double kC1Order4 = 9.0 / 8.0;
constexpr double kC2Order4 = -1.0 / 24.0;

}  // namespace

CflReport check_cfl(const SolverParams& params, const PhysicalConstants& constants, double f0) {
  CflReport report;
  const double c0 = constants.c0();
  const double stencil_sum = params.spatial_order == 4 ? kC1Order4 - kC2Order4 : 1.0;
  report.courant = c0 * params.dt / params.h;
  report.courant_limit = 1.0 / (std::sqrt(2.0) * stencil_sum);
  report.cells_per_wavelength = f0 > 0.0 ? c0 / f0 / params.h : 0.0;
  // Small slack so that a step exactly at the limit survives rounding.
  report.ok = params.h > 0.0 && params.dt > 0.0 &&
              report.courant <= report.courant_limit * (1.0 + 1e-12);
  report.warning = report.cells_per_wavelength < 8.0;
  if (!report.ok) {
    report.message = "CFL violated: c0*dt/h = " + std::to_string(report.courant) +
                     " exceeds " + std::to_string(report.courant_limit);
  } else if (report.warning) {
    report.message = "only " + std::to_string(report.cells_per_wavelength) +
                     " cells per carrier wavelength (at least 10 recommended)";
  }
  return report;
}

namespace {

constexpr std::size_t kGhost = 2;

struct Grid2D {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t stride = 0;  // padded row length
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 0.0;
  double pml_lo_x = 0.0, pml_hi_x = 0.0, pml_lo_y = 0.0, pml_hi_y = 0.0;
  double pml_width = 0.0;
  double sigma_max = 0.0;
  double order = 2.0;

  std::size_t padded_size() const { return stride * (ny + 2 * kGhost); }
  std::size_t idx(std::size_t i, std::size_t j) const {
    return (j + kGhost) * stride + i + kGhost;
  }
  double x(double i) const { return x0 + i * h; }
  double y(double j) const { return y0 + j * h; }

  double sigma_at(double coord, double lo, double hi) const {
    double depth = 0.0;
    if (coord < lo) depth = lo - coord;
    if (coord > hi) depth = coord - hi;
    if (depth <= 0.0) return 0.0;
    return sigma_max * std::pow(std::min(depth / pml_width, 1.0), order);
  }
  double sigma_x(double xc) const { return sigma_at(xc, pml_lo_x, pml_hi_x); }
  double sigma_y(double yc) const { return sigma_at(yc, pml_lo_y, pml_hi_y); }
};

Grid2D make_grid(const Scene& scene, const SolverParams& p) {
  Vec3 lo = scene.source.location;
  Vec3 hi = scene.source.location;
  auto grow = [&](const Vec3& a, const Vec3& b) {
    lo = lo.cwiseMin(a);
    hi = hi.cwiseMax(b);
  };
  for (const Vec3& r : scene.receivers.positions) grow(r, r);
  for (const Scatterer& s : scene.scatterers) grow(s.center - s.half_widths, s.center + s.half_widths);
  grow(scene.grid.min, scene.grid.max);

  Grid2D g;
  g.h = p.h;
  g.order = p.absorber_order;
  g.pml_width = p.absorber_cells * p.h;
  const double c0 = scene.constants.c0();
  g.sigma_max = p.absorber_cells > 0
                    ? -(p.absorber_order + 1.0) * std::log(p.absorber_reflection) *
                          scene.constants.eps0 * c0 / (2.0 * g.pml_width)
                    : 0.0;

  const double extra = p.padding + g.pml_width + p.h;
  g.x0 = p.h * std::floor((lo.x() - extra) / p.h);
  g.y0 = p.h * std::floor((lo.y() - extra) / p.h);
  g.nx = static_cast<std::size_t>(std::ceil((hi.x() + extra - g.x0) / p.h)) + 1;
  g.ny = static_cast<std::size_t>(std::ceil((hi.y() + extra - g.y0) / p.h)) + 1;
  g.stride = g.nx + 2 * kGhost;
  g.pml_lo_x = g.x0 + p.h + g.pml_width;
  g.pml_hi_x = g.x(double(g.nx - 1)) - p.h - g.pml_width;
  g.pml_lo_y = g.y0 + p.h + g.pml_width;
  g.pml_hi_y = g.y(double(g.ny - 1)) - p.h - g.pml_width;
  return g;
}

// Relative permittivity averaged over the dual cell centered at (xc, yc).
double averaged_eps_r(const Scene& scene, double xc, double yc, double h) {
  double contrast = 0.0;
  double max_contrast = 0.0;
  for (const Scatterer& s : scene.scatterers) {
    const double ox = std::max(0.0, std::min(xc + 0.5 * h, s.center.x() + s.half_widths.x()) -
                                        std::max(xc - 0.5 * h, s.center.x() - s.half_widths.x()));
    const double oy = std::max(0.0, std::min(yc + 0.5 * h, s.center.y() + s.half_widths.y()) -
                                        std::max(yc - 0.5 * h, s.center.y() - s.half_widths.y()));
    const double frac = ox * oy / (h * h);
    if (frac > 0.0) {
      contrast += frac * (s.eps_r - 1.0);
      max_contrast = std::max(max_contrast, s.eps_r - 1.0);
    }
  }
  // Overlapping boxes never exceed the largest contrast present.
  if (max_contrast > 0.0) contrast = std::min(contrast, max_contrast);
  return 1.0 + contrast;
}

struct SourceTap {
  std::size_t index;
  double weight;
};

// Normalized C^2 bump (1 - (r/R)^2)^3 sampled on one staggered node set whose
// node (i, j) sits at (x0 + (i + sx) h, y0 + (j + sy) h).
std::vector<SourceTap> mollifier_taps(const Grid2D& g, const Vec3& y, double radius, double sx,
                                      double sy) {
  std::vector<SourceTap> taps;
  const double h = g.h;
  const auto reach = static_cast<long>(std::ceil(radius / h)) + 1;
  const long ci = std::lround((y.x() - g.x0) / h - sx);
  const long cj = std::lround((y.y() - g.y0) / h - sy);
  double total = 0.0;
  for (long j = cj - reach; j <= cj + reach; ++j) {
    for (long i = ci - reach; i <= ci + reach; ++i) {
      if (i < 1 || j < 1 || i + 1 >= long(g.nx) || j + 1 >= long(g.ny)) continue;
      const double dx = g.x0 + (double(i) + sx) * h - y.x();
      const double dy = g.y0 + (double(j) + sy) * h - y.y();
      const double q = (dx * dx + dy * dy) / (radius * radius);
      if (q >= 1.0) continue;
      const double w = std::pow(1.0 - q, 3);
      taps.push_back({g.idx(std::size_t(i), std::size_t(j)), w});
      total += w;
    }
  }
  if (total <= 0.0) {
    throw SolverError("source mollifier does not cover any grid node");
  }
  for (SourceTap& t : taps) t.weight /= total * h * h;
  return taps;
}

struct Probe {
  std::array<std::size_t, 4> index;
  std::array<double, 4> weight;

  double sample(const std::vector<double>& f) const {
    return weight[0] * f[index[0]] + weight[1] * f[index[1]] + weight[2] * f[index[2]] +
           weight[3] * f[index[3]];
  }
};

Probe make_probe(const Grid2D& g, const Vec3& p, double sx, double sy) {
  const double fx = (p.x() - g.x0) / g.h - sx;
  const double fy = (p.y() - g.y0) / g.h - sy;
  const auto i = static_cast<std::size_t>(std::floor(fx));
  const auto j = static_cast<std::size_t>(std::floor(fy));
  const double u = fx - double(i);
  const double v = fy - double(j);
  Probe probe;
  probe.index = {g.idx(i, j), g.idx(i + 1, j), g.idx(i, j + 1), g.idx(i + 1, j + 1)};
  probe.weight = {(1 - u) * (1 - v), u * (1 - v), (1 - u) * v, u * v};
  return probe;
}

struct RunOutput {
  std::vector<double> samples;  // [m][n][c]
  std::vector<double> energy;
};

class Solver2D {
 public:
  Solver2D(const Scene& scene, const SolverParams& params, Mode2D mode, bool with_scatterers)
      : scene_(scene), params_(params), mode_(mode), with_scatterers_(with_scatterers) {
    g_ = make_grid(scene, params);
    c1_ = params.spatial_order == 4 ? kC1Order4 : 1.0;
    c2_ = params.spatial_order == 4 ? kC2Order4 : 0.0;
  }

  const Grid2D& grid() const { return g_; }

  RunOutput run(std::size_t n_records, bool track_energy) {
    setup();
    const std::size_t n_rx = scene_.receivers.positions.size();
    const int comps = mode_ == Mode2D::TM ? 1 : 2;
    const std::size_t n_samples = n_records + 1;
    const auto stride = static_cast<std::size_t>(params_.record_stride);
    const std::size_t n_steps = n_records * stride;
    RunOutput out;
    out.samples.assign(n_rx * n_samples * comps, 0.0);
    if (track_energy) out.energy.reserve(n_steps);

    const double dt = params_.dt;
    const double src_scale = dt / scene_.constants.mu0;
    for (std::size_t n = 0; n < n_steps; ++n) {
      const double chi = eval_pulse(double(n) * dt, scene_.source.pulse);
      if (mode_ == Mode2D::TM) {
        step_tm(chi * src_scale, track_energy);
      } else {
        step_te(chi * src_scale, track_energy);
      }
      if (track_energy) out.energy.push_back(energy_);
      if ((n + 1) % stride != 0) continue;
      const std::size_t rec = (n + 1) / stride;
      for (std::size_t m = 0; m < n_rx; ++m) {
        for (int c = 0; c < comps; ++c) {
          const double v = probes_[m * comps + c].sample(*probe_field_[c]);
          if (!std::isfinite(v)) {
            throw SolverError("non-finite field at step " + std::to_string(n + 1));
          }
          out.samples[(m * n_samples + rec) * comps + c] = v;
        }
      }
      if (rec % 64 == 0) check_finite(n + 1);
    }
    return out;
  }

 private:
  void setup() {
    const std::size_t size = g_.padded_size();
    const double h = g_.h;
    const double dt = params_.dt;
    const double eps0 = scene_.constants.eps0;
    const double mu0 = scene_.constants.mu0;

    auto e_coeffs = [&](double sigma, double eps, double& ca, double& cb) {
      const double loss = sigma * dt / (2.0 * eps);
      ca = (1.0 - loss) / (1.0 + loss);
      cb = dt / eps / (1.0 + loss) / h;
    };
    // Magnetic conductivity matched to the electric one: sigma* / mu0 = sigma / eps0.
    auto h_coeffs = [&](double sigma, double& da, double& db) {
      const double loss = sigma * dt / (2.0 * eps0);
      da = (1.0 - loss) / (1.0 + loss);
      db = dt / mu0 / (1.0 + loss) / h;
    };
    auto eps_r_at = [&](double sx, double sy, std::size_t i, std::size_t j) {
      if (!with_scatterers_) return 1.0;
      return averaged_eps_r(scene_, g_.x(double(i) + sx), g_.y(double(j) + sy), h);
    };

    const double radius = params_.mollifier_cells * h;
    const auto& rx = scene_.receivers.positions;
    probes_.clear();
    ca_x_.assign(size, 1.0);
    cb_x_.assign(size, 0.0);
    ca_y_.assign(size, 1.0);
    cb_y_.assign(size, 0.0);
    // H coefficients depend on one coordinate only: rows see sigma_y, columns sigma_x.
    da_row_.resize(g_.ny);
    db_row_.resize(g_.ny);
    for (std::size_t j = 0; j < g_.ny; ++j) {
      h_coeffs(g_.sigma_y(g_.y(double(j) + 0.5)), da_row_[j], db_row_[j]);
    }
    da_col_.resize(g_.nx);
    db_col_.resize(g_.nx);
    for (std::size_t i = 0; i < g_.nx; ++i) {
      h_coeffs(g_.sigma_x(g_.x(double(i) + 0.5)), da_col_[i], db_col_[i]);
    }

    if (mode_ == Mode2D::TM) {
      for (auto* f : {&ez_, &ezx_, &ezy_, &hx_, &hy_}) f->assign(size, 0.0);
      for (std::size_t j = 0; j < g_.ny; ++j) {
        for (std::size_t i = 0; i < g_.nx; ++i) {
          const double eps = eps0 * eps_r_at(0.0, 0.0, i, j);
          const std::size_t k = g_.idx(i, j);
          e_coeffs(g_.sigma_x(g_.x(double(i))), eps, ca_x_[k], cb_x_[k]);
          e_coeffs(g_.sigma_y(g_.y(double(j))), eps, ca_y_[k], cb_y_[k]);
        }
      }
      const Vec3& p = scene_.source.polarization;
      taps_a_ = mollifier_taps(g_, scene_.source.location, radius, 0.0, 0.5);
      for (SourceTap& t : taps_a_) t.weight *= p.x();
      taps_b_ = mollifier_taps(g_, scene_.source.location, radius, 0.5, 0.0);
      for (SourceTap& t : taps_b_) t.weight *= p.y();
      for (const Vec3& r : rx) probes_.push_back(make_probe(g_, r, 0.0, 0.0));
      probe_field_ = {&ez_};
    } else {
      for (auto* f : {&ex_, &ey_, &hz_, &hzx_, &hzy_}) f->assign(size, 0.0);
      for (std::size_t j = 0; j < g_.ny; ++j) {
        for (std::size_t i = 0; i < g_.nx; ++i) {
          const std::size_t k = g_.idx(i, j);
          // Ex at (i+1/2, j) sees sigma_y; Ey at (i, j+1/2) sees sigma_x.
          e_coeffs(g_.sigma_y(g_.y(double(j))), eps0 * eps_r_at(0.5, 0.0, i, j), ca_y_[k],
                   cb_y_[k]);
          e_coeffs(g_.sigma_x(g_.x(double(i))), eps0 * eps_r_at(0.0, 0.5, i, j), ca_x_[k],
                   cb_x_[k]);
        }
      }
      taps_a_ = mollifier_taps(g_, scene_.source.location, radius, 0.5, 0.5);
      taps_b_.clear();
      for (const Vec3& r : rx) {
        probes_.push_back(make_probe(g_, r, 0.5, 0.0));
        probes_.push_back(make_probe(g_, r, 0.0, 0.5));
      }
      probe_field_ = {&ex_, &ey_};
    }
  }

  // Staggered difference at a point between f[k - s] and f[k] (wide stencil
  // reaches f[k - 2s] and f[k + s]).
  double diff(const double* f, std::ptrdiff_t k, std::ptrdiff_t s) const {
    return c1_ * (f[k] - f[k - s]) + c2_ * (f[k + s] - f[k - 2 * s]);
  }

  void step_tm(double src, bool track_energy) {
    const std::size_t nx = g_.nx;
    const std::size_t ny = g_.ny;
    const auto S = static_cast<std::ptrdiff_t>(g_.stride);
    if (track_energy) {
      hx_old_ = hx_;
      hy_old_ = hy_;
    }
    const double* ez = ez_.data();
    double* hx = hx_.data();
    double* hy = hy_.data();
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const double da = da_row_[j];
      const double db = db_row_[j];
      const auto row = static_cast<std::ptrdiff_t>(g_.idx(0, j));
      for (std::size_t i = 0; i < nx; ++i) {
        const std::ptrdiff_t k = row + std::ptrdiff_t(i);
        hx[k] = da * hx[k] - db * diff(ez, k + S, S);
      }
    }
    for (std::size_t j = 0; j < ny; ++j) {
      const auto row = static_cast<std::ptrdiff_t>(g_.idx(0, j));
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        const std::ptrdiff_t k = row + std::ptrdiff_t(i);
        hy[k] = da_col_[i] * hy[k] + db_col_[i] * diff(ez, k + 1, 1);
      }
    }
    for (const SourceTap& t : taps_a_) hx[t.index] += src * t.weight;
    for (const SourceTap& t : taps_b_) hy[t.index] += src * t.weight;

    for (std::size_t j = 1; j + 1 < ny; ++j) {
      const auto row = static_cast<std::ptrdiff_t>(g_.idx(0, j));
      for (std::size_t i = 1; i + 1 < nx; ++i) {
        const std::ptrdiff_t k = row + std::ptrdiff_t(i);
        ezx_[k] = ca_x_[k] * ezx_[k] + cb_x_[k] * diff(hy, k, 1);
        ezy_[k] = ca_y_[k] * ezy_[k] - cb_y_[k] * diff(hx, k, S);
        ez_[k] = ezx_[k] + ezy_[k];
      }
    }
    if (track_energy) energy_ = tm_energy();
  }

  void step_te(double src, bool track_energy) {
    const std::size_t nx = g_.nx;
    const std::size_t ny = g_.ny;
    const auto S = static_cast<std::ptrdiff_t>(g_.stride);
    if (track_energy) hz_old_ = hz_;
    const double* ex = ex_.data();
    const double* ey = ey_.data();
    double* hz = hz_.data();
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const double da_y = da_row_[j];
      const double db_y = db_row_[j];
      const auto row = static_cast<std::ptrdiff_t>(g_.idx(0, j));
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        const std::ptrdiff_t k = row + std::ptrdiff_t(i);
        hzx_[k] = da_col_[i] * hzx_[k] - db_col_[i] * diff(ey, k + 1, 1);
        hzy_[k] = da_y * hzy_[k] + db_y * diff(ex, k + S, S);
      }
    }
    for (const SourceTap& t : taps_a_) hzx_[t.index] += src * t.weight;
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const auto row = static_cast<std::ptrdiff_t>(g_.idx(0, j));
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        const std::ptrdiff_t k = row + std::ptrdiff_t(i);
        hz[k] = hzx_[k] + hzy_[k];
      }
    }
    for (std::size_t j = 1; j + 1 < ny; ++j) {
      const auto row = static_cast<std::ptrdiff_t>(g_.idx(0, j));
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        const std::ptrdiff_t k = row + std::ptrdiff_t(i);
        ex_[k] = ca_y_[k] * ex_[k] + cb_y_[k] * diff(hz, k, S);
      }
    }
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const auto row = static_cast<std::ptrdiff_t>(g_.idx(0, j));
      for (std::size_t i = 1; i + 1 < nx; ++i) {
        const std::ptrdiff_t k = row + std::ptrdiff_t(i);
        ey_[k] = ca_x_[k] * ey_[k] - cb_x_[k] * diff(hz, k, 1);
      }
    }
    if (track_energy) energy_ = te_energy();
  }

  // Permittivity recovered from an update coefficient; exact where sigma = 0.
  double eps_from(double cb) const { return cb > 0.0 ? params_.dt / (cb * g_.h) : 0.0; }

  // eps |E^{n+1}|^2 + mu0 H^{n+1/2} . H^{n-1/2}: conserved by the lossless scheme.
  double tm_energy() const {
    const double mu0 = scene_.constants.mu0;
    double e = 0.0;
    for (std::size_t k = 0; k < ez_.size(); ++k) {
      e += eps_from(cb_x_[k]) * ez_[k] * ez_[k];
      e += mu0 * (hx_[k] * hx_old_[k] + hy_[k] * hy_old_[k]);
    }
    return 0.5 * e * g_.h * g_.h;
  }

  double te_energy() const {
    const double mu0 = scene_.constants.mu0;
    double e = 0.0;
    for (std::size_t k = 0; k < hz_.size(); ++k) {
      e += eps_from(cb_y_[k]) * ex_[k] * ex_[k] + eps_from(cb_x_[k]) * ey_[k] * ey_[k];
      e += mu0 * hz_[k] * hz_old_[k];
    }
    return 0.5 * e * g_.h * g_.h;
  }

  void check_finite(std::size_t step) const {
    const auto& f = mode_ == Mode2D::TM ? ez_ : hz_;
    for (double v : f) {
      if (!std::isfinite(v)) {
        throw SolverError("non-finite field at step " + std::to_string(step));
      }
    }
  }

  const Scene& scene_;
  SolverParams params_;
  Mode2D mode_;
  bool with_scatterers_;
  Grid2D g_;
  double c1_ = 1.0;
  double c2_ = 0.0;

  std::vector<double> ez_, ezx_, ezy_, hx_, hy_, hx_old_, hy_old_;
  std::vector<double> ex_, ey_, hz_, hzx_, hzy_, hz_old_;
  std::vector<double> ca_x_, cb_x_, ca_y_, cb_y_;
  std::vector<double> da_row_, db_row_, da_col_, db_col_;
  std::vector<SourceTap> taps_a_, taps_b_;
  std::vector<Probe> probes_;
  std::vector<const std::vector<double>*> probe_field_;
  double energy_ = 0.0;
};

}  // namespace

TraceSet run_forward_2d(const Scene& scene, const SolverParams& params, Mode2D mode,
                        double duration, ForwardDiagnostics* diagnostics) {
  if (scene.dim != 2) throw SolverError("run_forward_2d requires a 2D scene");
  if (!(params.h > 0.0) || !(params.dt > 0.0) || params.absorber_cells < 0 ||
      !(params.padding >= 0.0) || !(params.mollifier_cells > 0.0) ||
      !(params.absorber_reflection > 0.0 && params.absorber_reflection < 1.0) ||
      (params.spatial_order != 2 && params.spatial_order != 4) || params.record_stride < 1) {
    throw SolverError("invalid solver parameters");
  }
  const CflReport cfl = check_cfl(params, scene.constants, scene.source.pulse.f0);
  if (!cfl.ok) throw SolverError(cfl.message);
  if (!(duration > 0.0)) throw SolverError("simulation duration must be positive");

  const double trace_dt = params.dt * params.record_stride;
  const auto n_records = static_cast<std::size_t>(std::llround(duration / trace_dt));
  if (n_records < 1) throw SolverError("simulation duration is shorter than one trace step");

  Solver2D background(scene, params, mode, false);
  Solver2D total(scene, params, mode, true);
  const Grid2D& g = background.grid();
  for (std::size_t m = 0; m < scene.receivers.positions.size(); ++m) {
    const Vec3& r = scene.receivers.positions[m];
    if (r.x() <= g.pml_lo_x || r.x() >= g.pml_hi_x || r.y() <= g.pml_lo_y ||
        r.y() >= g.pml_hi_y) {
      throw SolverError("receiver " + std::to_string(m) + " lies outside the computational box");
    }
  }

  RunOutput runs[2];
  std::exception_ptr failure[2];
  const bool track = diagnostics != nullptr;
  parallel_for(2, [&](std::size_t k) {
    try {
      runs[k] = k == 0 ? background.run(n_records, track) : total.run(n_records, false);
    } catch (...) {
      failure[k] = std::current_exception();
    }
  });
  for (const auto& f : failure) {
    if (f) std::rethrow_exception(f);
  }

  TraceSet traces(scene.receivers.positions, trace_dt, n_records + 1,
                  mode == Mode2D::TM ? 1 : 2);
  for (std::size_t k = 0; k < traces.values.size(); ++k) {
    traces.values[k] = runs[1].samples[k] - runs[0].samples[k];
  }
  if (diagnostics) {
    diagnostics->background_energy = std::move(runs[0].energy);
    diagnostics->nx = g.nx;
    diagnostics->ny = g.ny;
  }
  return traces;
}

}  // namespace tdsm
