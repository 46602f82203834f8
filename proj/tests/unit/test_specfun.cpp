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

#include <doctest.h>

#include "tdsm/specfun.hpp"

using namespace tdsm;

namespace {

Dyadic3 lemma1_integrand(const Vec3& x, const Vec3& z, double sigma_over_c0) {
  return (Dyadic3::Identity() - x * x.transpose()) * std::exp(sigma_over_c0 * x.dot(z));
}

}  // namespace

TEST_CASE("modified spherical Bessel values and limits") {
  CHECK(mod_sph_bessel_i(0, 0.0) == 1.0);
  CHECK(mod_sph_bessel_i(2, 0.0) == 0.0);
  CHECK(mod_sph_bessel_i(0, 1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  const double x = 2.5;
  const double i2 = ((x * x + 3.0) * std::sinh(x) - 3.0 * x * std::cosh(x)) / (x * x * x);
  CHECK(mod_sph_bessel_i(2, x) == doctest::Approx(i2).epsilon(1e-13));
  CHECK_THROWS_AS(mod_sph_bessel_i(0, -1e-3), std::invalid_argument);
  CHECK_THROWS_AS(mod_sph_bessel_i(1, 1.0), std::invalid_argument);
}

TEST_CASE("Bessel functions are positive and increasing on a log grid") {
  double prev0 = 1.0;
  double prev2 = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double x = 1e-6 * std::pow(20.0 / 1e-6, k / 200.0);
    const double v0 = mod_sph_bessel_i(0, x);
    const double v2 = mod_sph_bessel_i(2, x);
    CHECK(v0 > 0.0);
    CHECK(v2 > 0.0);
    CHECK(v0 >= prev0);
    CHECK(v2 > prev2);
    prev0 = v0;
    prev2 = v2;
  }
}

TEST_CASE("series and direct branches agree at the crossover") {
  // Direct formulas evaluated in long double at the thresholds.
  const long double x0 = 1e-2L;
  const long double i0 = std::sinh(x0) / x0;
  CHECK(std::abs(mod_sph_bessel_i(0, 1e-2) - static_cast<double>(i0)) < 1e-12);
  const long double x2 = 1e-1L;
  const long double i2 = ((x2 * x2 + 3) * std::sinh(x2) - 3 * x2 * std::cosh(x2)) / (x2 * x2 * x2);
  CHECK(std::abs(mod_sph_bessel_i(2, 1e-1) - static_cast<double>(i2)) < 1e-12);
  CHECK(std::abs(mod_sph_bessel_i(0, std::nextafter(1e-2, 0.0)) - mod_sph_bessel_i(0, 1e-2)) < 1e-12);
  CHECK(std::abs(mod_sph_bessel_i(2, std::nextafter(1e-1, 0.0)) - mod_sph_bessel_i(2, 1e-1)) < 1e-12);
}

TEST_CASE("closed-form sphere integral: z = 0 and the trace identity") {
  const double c0 = 3e8;
  const Dyadic3 at0 = lemma1_closed_form(Vec3::Zero(), 1e7, c0);
  CHECK((at0 - (8.0 * kPi / 3.0) * Dyadic3::Identity()).norm() < 1e-14);
  const Vec3 z(0.3, -2.0, 1.1);
  const double sigma = 4e8;
  const Dyadic3 m = lemma1_closed_form(z, sigma, c0);
  CHECK(m.trace() == doctest::Approx(8.0 * kPi * mod_sph_bessel_i(0, sigma * z.norm() / c0)).epsilon(1e-13));
  CHECK((m - m.transpose()).norm() < 1e-13);
}

TEST_CASE("sphere quadrature reproduces simple moments") {
  const Dyadic3 area = sphere_quadrature_oracle([](const Vec3&) { return Dyadic3(Dyadic3::Identity()); });
  CHECK((area - 4.0 * kPi * Dyadic3::Identity()).norm() < 1e-12);
  const Dyadic3 second = sphere_quadrature_oracle([](const Vec3& x) { return Dyadic3(x * x.transpose()); });
  CHECK((second - (4.0 * kPi / 3.0) * Dyadic3::Identity()).norm() < 1e-10);
  CHECK_THROWS_AS(sphere_quadrature_oracle([](const Vec3&) { return Dyadic3(Dyadic3::Identity()); }, 4),
                  std::invalid_argument);
}

TEST_CASE("closed form matches quadrature at a fixed point") {
  const Vec3 z(0.7, -1.1, 0.4);
  const double c0 = 3e8;
  const double sigma = c0;  // sigma / c0 = 1
  const Dyadic3 q = sphere_quadrature_oracle([&](const Vec3& x) { return lemma1_integrand(x, z, 1.0); });
  CHECK((lemma1_closed_form(z, sigma, c0) - q).norm() / q.norm() < 1e-8);
}

TEST_CASE("closed form matches quadrature for 50 random draws") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> s(0.0, 5.0);
  const double c0 = 3e8;
  for (int k = 0; k < 50; ++k) {
    Vec3 z(u(rng), u(rng), u(rng));
    z *= 2.0;
    const double target = s(rng);
    const double soc = z.norm() > 0.0 ? target / z.norm() : 0.0;
    const Dyadic3 q = sphere_quadrature_oracle([&](const Vec3& x) { return lemma1_integrand(x, z, soc); });
    CHECK((lemma1_closed_form(z, soc * c0, c0) - q).norm() / q.norm() < 1e-8);
  }
}

TEST_CASE("quadrature self-convergence at sigma |z| / c0 = 2") {
  const Vec3 z(0.0, 0.0, 2.0);
  auto f = [&](const Vec3& x) { return lemma1_integrand(x, z, 1.0); };
  const Dyadic3 a = sphere_quadrature_oracle(f, 40);
  const Dyadic3 b = sphere_quadrature_oracle(f, 80);
  CHECK((a - b).norm() < 1e-10);
}

TEST_CASE("dyadic Green function: symmetry, far field and the Hessian oracle") {
  const double eps0 = 8.8541878128e-12;
  const double mu0 = 1.25663706212e-6;
  const double c0 = 1.0 / std::sqrt(eps0 * mu0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);

  for (int k = 0; k < 100; ++k) {
    const Vec3 x(u(rng), u(rng), u(rng));
    const Vec3 y(u(rng), u(rng), u(rng));
    const std::complex<double> w(1e9 * (1.0 + std::abs(u(rng))), 1e8 * std::abs(u(rng)));
    const ComplexDyadic3 a = dyadic_green_freq(x, y, w, eps0, mu0);
    const ComplexDyadic3 b = dyadic_green_freq(y, x, w, eps0, mu0);
    CHECK((a - b).norm() <= 1e-14 * a.norm());
    CHECK((a - a.transpose()).norm() <= 1e-14 * a.norm());
  }

  // Far field: kr = 1000.
  const Vec3 x(1.0, 2.0, -0.5);
  const Vec3 y = Vec3::Zero();
  const double r = x.norm();
  const double omega = 1000.0 * c0 / r;
  const ComplexDyadic3 phi = dyadic_green_freq(x, y, omega, eps0, mu0);
  const Vec3 rhat = x / r;
  const std::complex<double> g = std::exp(std::complex<double>(0.0, 1000.0)) / (4.0 * kPi * r);
  const ComplexDyadic3 far = g * (Dyadic3::Identity() - rhat * rhat.transpose()).cast<std::complex<double>>();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(phi(i, j) - far(i, j)) <= 0.005 * std::abs(g));
    }
  }

  // Central-difference Hessian of the scalar kernel.
  for (int k = 0; k < 10; ++k) {
    const Vec3 xs(u(rng), u(rng), u(rng));
    const Vec3 ys(u(rng), u(rng), u(rng));
    const std::complex<double> w(2e9, 3e8);
    const std::complex<double> kk = w / c0;
    auto scalar = [&](const Vec3& p) {
      const double rr = (p - ys).norm();
      return std::exp(std::complex<double>(0.0, 1.0) * kk * rr) / (4.0 * kPi * rr);
    };
    const double h = 1e-4 * (xs - ys).norm();
    Eigen::Matrix3cd hess;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Vec3 ei = Vec3::Unit(i) * h;
        const Vec3 ej = Vec3::Unit(j) * h;
        hess(i, j) = (scalar(xs + ei + ej) - scalar(xs + ei - ej) - scalar(xs - ei + ej) +
                      scalar(xs - ei - ej)) / (4.0 * h * h);
      }
    }
    const ComplexDyadic3 oracle =
        scalar(xs) * Eigen::Matrix3cd::Identity() + hess / (w * w * mu0 * eps0);
    const ComplexDyadic3 analytic = dyadic_green_freq(xs, ys, w, eps0, mu0);
    CHECK((analytic - oracle).norm() <= 1e-5 * analytic.norm());
  }

  CHECK_THROWS_AS(dyadic_green_freq(x, x, omega, eps0, mu0), std::invalid_argument);
  CHECK_THROWS_AS(dyadic_green_freq(x, y, 0.0, eps0, mu0), std::invalid_argument);
}
