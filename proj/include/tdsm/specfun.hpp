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

#ifndef TDSM_SPECFUN_HPP
#define TDSM_SPECFUN_HPP

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "tdsm/common.hpp"

namespace tdsm {

using Dyadic3 = Eigen::Matrix3d;
using ComplexDyadic3 = Eigen::Matrix3cd;

/// Modified spherical Bessel function of the first kind, orders 0 and 2.
/// Short Taylor series below x = 1e-2 (order 0) and x = 1e-1 (order 2).
double mod_sph_bessel_i(int order, double x);

/// Closed form of  int_{S^2} (I - x x^T) exp(sigma/c0 x.z) ds(x):
///   (8 pi/3) i0(s) I + (4 pi/3) (I - 3 zhat zhat^T) i2(s),  s = sigma |z| / c0.
Dyadic3 lemma1_closed_form(const Vec3& z, double sigma, double c0);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Product-rule quadrature of a matrix-valued function over the unit sphere:
/// `order` Gauss-Legendre nodes in cos(polar) times 2*order uniform azimuths.
Dyadic3 sphere_quadrature_oracle(const std::function<Dyadic3(const Vec3&)>& f, int order = 40);

/// Frequency-domain dyadic Green's function
///   Phi = g [ (1 + i/(kr) - 1/(kr)^2) I - (1 + 3i/(kr) - 3/(kr)^2) rhat rhat^T ],
/// g = exp(i k r) / (4 pi r), k = omega sqrt(mu0 eps0).
ComplexDyadic3 dyadic_green_freq(const Vec3& x, const Vec3& y, std::complex<double> omega,
                                 double eps0, double mu0);

}  // namespace tdsm

#endif  // TDSM_SPECFUN_HPP
