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

// tdsm: simulate scattering data and image it with the time-domain sampling method.

#include <iostream>

#include <CLI11.hpp>

#include "tdsm/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Time-domain direct sampling for electromagnetic inverse scattering"};
  app.require_subcommand(1);
  tdsm::CommandOptions opt;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config, "experiment config file");
    if (needs_config) c->required();
  };
  auto add_image = [&](CLI::App* sub) {
    sub->add_option("--traces", opt.traces, "trace file (default: output.traces)");
    sub->add_option("--out", opt.out, "grid file (default: output.grid)");
    sub->add_option("--delta", opt.delta, "noise level applied before imaging");
    sub->add_option("--seed", opt.seed, "noise seed");
  };

  auto* simulate = app.add_subcommand("simulate", "run the forward solver and write traces");
  add_common(simulate, true);
  simulate->add_option("--out", opt.out, "trace file (default: output.traces)");

  auto* image = app.add_subcommand("image", "image traces and write an indicator grid");
  add_common(image, true);
  add_image(image);
  image->add_option("--method", opt.method, "dsm or tfm")->check(CLI::IsMember({"dsm", "tfm"}));

  auto* tfm = app.add_subcommand("tfm-image", "delay-and-sum baseline image");
  add_common(tfm, true);
  add_image(tfm);

  auto* aperture = app.add_subcommand("aperture", "sampling image from a sector of receivers");
  add_common(aperture, true);
  add_image(aperture);
  aperture->add_option("--theta-min", opt.theta_min, "lower polar angle, rad");
  aperture->add_option("--theta-max", opt.theta_max, "upper polar angle, rad");

  auto* verify = app.add_subcommand("verify", "run property checks");
  add_common(verify, false);
  verify->add_option("suite", opt.suite, "bessel, parseval, equivalence, noise-stability or all");

  auto* spectrum = app.add_subcommand("spectrum", "amplitude spectrum of the configured pulse");
  add_common(spectrum, true);
  spectrum->add_option("--out", opt.out, "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : tdsm::kExitConfig;
  }
  opt.command = app.get_subcommands().front()->get_name();
  return tdsm::run_command(opt, std::cout, std::cerr);
}
