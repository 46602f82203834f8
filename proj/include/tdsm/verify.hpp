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

#ifndef TDSM_VERIFY_HPP
#define TDSM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tdsm/config.hpp"
#include "tdsm/forward.hpp"
#include "tdsm/imaging.hpp"

namespace tdsm {

/// One measured quantity against its tolerance; pass means measured <= tolerance.
struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Check make_check(std::string name, double measured, double tolerance);

/// `CHECK <name> <measured> <tolerance> <PASS|FAIL>`
std::string format_check(const Check& check);

/// Closed-form sphere integral against order-40 quadrature for random z with
/// sigma |z| / c0 in [0, 5]; worst relative Frobenius error, tolerance 1e-8.
Check check_lemma1(int draws, std::uint64_t seed);

/// Parseval residual of the Gaussian pulse (1 m carrier wavelength) at
/// sigma = 0 and sigma = 2e7 1/s, tolerance 1e-3 each.
std::vector<Check> check_parseval();

/// Time against frequency indicator at random points of the sampling domain,
/// scaled by the grid maximum; tolerance 1e-2.
Check check_equivalence(const ExperimentConfig& config, const TraceSet& traces,
                        const IndicatorGrid& clean, int points, std::uint64_t seed);

/**
 * Indicator perturbation under noise for delta in {0.1, 0.2, 0.4}, averaged
 * over 5 seeds. c = mean perturbation at 0.1 divided by 0.1; the growth checks
 * measure mean(delta) / (c delta) against 2. At delta = 0.4 every seed must
 * keep exactly one peak per scatterer, each within 3 sampling cells.
 */
std::vector<Check> check_noise_stability(const ExperimentConfig& config, const TraceSet& traces,
                                         const IndicatorGrid& clean);

/// bessel, parseval, equivalence, noise-stability, all.
const std::vector<std::string>& verify_suite_names();

/// Runs a suite. The 2D suites simulate the given TM config. Throws
/// std::invalid_argument for an unknown suite name.
std::vector<Check> run_verify(const std::string& suite, const ExperimentConfig& tm_config);

}  // namespace tdsm

#endif  // TDSM_VERIFY_HPP
