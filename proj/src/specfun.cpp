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

#include "tdsm/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace tdsm {

namespace {
constexpr double kSeriesThresholdI0 = 1e-2;
constexpr double kSeriesThresholdI2 = 1e-1;
}  // namespace

double mod_sph_bessel_i(int order, double x) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument("mod_sph_bessel_i requires x >= 0");
  }
  const double x2 = x * x;
  if (order == 0) {
    if (x < kSeriesThresholdI0) {
      return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
    }
    return std::sinh(x) / x;
  }
  if (order == 2) {
    if (x < kSeriesThresholdI2) {
      return x2 / 15.0 * (1.0 + x2 / 14.0 * (1.0 + x2 / 36.0 * (1.0 + x2 / 66.0)));
    }
    return ((x2 + 3.0) * std::sinh(x) - 3.0 * x * std::cosh(x)) / (x2 * x);
  }
  throw std::invalid_argument("mod_sph_bessel_i supports orders 0 and 2 only");
}

Dyadic3 lemma1_closed_form(const Vec3& z, double sigma, double c0) {
  if (!(sigma >= 0.0) || !(c0 > 0.0)) {
    throw std::invalid_argument("lemma1_closed_form requires sigma >= 0 and c0 > 0");
  }
  const double r = z.norm();
  const double s = sigma * r / c0;
  Dyadic3 out = (8.0 * kPi / 3.0) * mod_sph_bessel_i(0, s) * Dyadic3::Identity();
  if (r > 0.0) {
    const Vec3 zhat = z / r;
    out += (4.0 * kPi / 3.0) * mod_sph_bessel_i(2, s) *
           (Dyadic3::Identity() - 3.0 * zhat * zhat.transpose());
  }
  return out;
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw std::invalid_argument("gauss_legendre requires order >= 1");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Tricomi initial guess.
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order == 1 ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

Dyadic3 sphere_quadrature_oracle(const std::function<Dyadic3(const Vec3&)>& f, int order) {
  if (order < 8) throw std::invalid_argument("sphere quadrature requires order >= 8");
  std::vector<double> nodes;
  std::vector<double> weights;
  gauss_legendre(order, nodes, weights);
  const int n_phi = 2 * order;
  const double dphi = 2.0 * kPi / n_phi;
  Dyadic3 acc = Dyadic3::Zero();
  for (int i = 0; i < order; ++i) {
    const double ct = nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = dphi * j;
      const Vec3 xhat(st * std::cos(phi), st * std::sin(phi), ct);
      acc += weights[i] * dphi * f(xhat);
    }
  }
  return acc;
}

ComplexDyadic3 dyadic_green_freq(const Vec3& x, const Vec3& y, std::complex<double> omega,
                                 double eps0, double mu0) {
  const Vec3 d = x - y;
  const double r = d.norm();
  if (!(r > 0.0)) {
    throw std::invalid_argument("dyadic Green's function is singular at x = y");
  }
  if (omega == 0.0) {
    throw std::invalid_argument("dyadic Green's function is undefined at omega = 0");
  }
  using cd = std::complex<double>;
  const cd k = omega * std::sqrt(mu0 * eps0);
  const cd kr = k * r;
  const cd ikr = cd(0.0, 1.0) / kr;
  const cd inv2 = 1.0 / (kr * kr);
  const cd g = std::exp(cd(0.0, 1.0) * kr) / (4.0 * kPi * r);
  const cd a = g * (1.0 + ikr - inv2);
  const cd b = g * (1.0 + 3.0 * ikr - 3.0 * inv2);
  const Vec3 rhat = d / r;
  ComplexDyadic3 out = a * ComplexDyadic3::Identity();
  out -= b * (rhat * rhat.transpose()).cast<cd>();
  return out;
}

}  // namespace tdsm
