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

#include "tdsm/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "tdsm/config.hpp"
#include "tdsm/io.hpp"
#include "tdsm/pipeline.hpp"
#include "tdsm/verify.hpp"
#include "tdsm/waveform.hpp"

namespace tdsm {

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pick(const std::string& override_path, const std::string& configured, const char* what) {
  const std::string& p = override_path.empty() ? configured : override_path;
  if (p.empty()) throw ConfigError(std::string(what) + ": no path given on the command line or in the config");
  return p;
}

ExperimentConfig require_config(const CommandOptions& o) {
  if (o.config.empty()) throw ConfigError("--config is required for '" + o.command + "'");
  return load_config(o.config);
}

int cmd_simulate(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = require_config(o);
  const std::string path = pick(o.out, cfg.output.traces, "output.traces");
  const SimulationResult r = simulate(cfg);
  if (r.size_warning) {
    err << "warning: a scatterer is not small against the shortest probed wavelength; "
           "the Born data are a coarse approximation\n";
  }
  write_traces(path, r.traces);
  out << "traces " << path << " receivers " << r.traces.n_receivers() << " samples "
      << r.traces.n_samples << " components " << r.traces.components << " dt " << g17(r.traces.dt)
      << "\n";
  return kExitOk;
}

// Shared by image, tfm-image and aperture.
int cmd_image(const CommandOptions& o, const std::string& method, bool aperture, std::ostream& out) {
  const ExperimentConfig cfg = require_config(o);
  if (method != "dsm" && method != "tfm") throw ConfigError("--method must be dsm or tfm");
  const std::string in = pick(o.traces, cfg.output.traces, "output.traces");
  TraceSet traces = read_traces(in);
  check_traces_match(traces, cfg.scene, trace_components(cfg));

  const double delta = o.delta.value_or(cfg.noise.delta);
  const std::uint64_t seed = o.seed.value_or(cfg.noise.seed);
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("--delta must be non-negative");
  if (delta > 0.0) traces = add_noise(traces, delta, seed);

  std::string provenance = "traces=" + in;
  if (delta > 0.0) provenance += ",delta=" + g17(delta) + ",seed=" + std::to_string(seed);
  if (aperture) {
    if (cfg.scene.dim != 2) throw ConfigError("aperture needs a 2D circular receiver array");
    const bool cli = o.theta_min.has_value() || o.theta_max.has_value();
    if (cli && !(o.theta_min.has_value() && o.theta_max.has_value())) {
      throw ConfigError("give both --theta-min and --theta-max");
    }
    if (!cli && !cfg.aperture.set) {
      throw ConfigError("aperture: no angular range given on the command line or in the config");
    }
    const double lo = cli ? *o.theta_min : cfg.aperture.theta_min;
    const double hi = cli ? *o.theta_max : cfg.aperture.theta_max;
    if (!(lo <= hi)) throw ConfigError("aperture: theta_min must not exceed theta_max");
    traces = select_aperture(traces, cfg.scene.receivers, lo, hi);
    provenance += ",theta=" + g17(lo) + ":" + g17(hi);
  }
  for (char& ch : provenance) {
    if (ch == ' ' || ch == '\t') ch = '_';
  }

  IndicatorGrid grid = method == "dsm" ? image_dsm(cfg, traces) : image_tfm(cfg, traces);
  grid.provenance = provenance;
  write_grid(pick(o.out, cfg.output.grid, "output.grid"), grid);
  if (!cfg.output.pgm.empty() && cfg.scene.dim == 2) write_pgm(cfg.output.pgm, grid);

  for (const Peak& p : locate_peaks(grid, cfg.imaging.rel_threshold)) {
    out << g17(p.point.x()) << " " << g17(p.point.y());
    if (cfg.scene.dim == 3) out << " " << g17(p.point.z());
    out << " " << g17(p.value) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const CommandOptions& o, std::ostream& out) {
  const ExperimentConfig cfg =
      o.config.empty() ? parse_config(preset_text("paper_tm")) : load_config(o.config);
  if (cfg.scene.dim != 2) throw ConfigError("verify needs a 2D scene config");
  bool ok = true;
  for (const Check& c : run_verify(o.suite, cfg)) {
    out << format_check(c) << "\n";
    ok = ok && c.pass;
  }
  return ok ? kExitOk : kExitChecks;
}

// Amplitude spectrum of the configured pulse: `f_hz magnitude` per line.
int cmd_spectrum(const CommandOptions& o, std::ostream& out) {
  const ExperimentConfig cfg = require_config(o);
  const PulseSpec& pulse = cfg.scene.source.pulse;
  const double dt = pulse.envelope_width() / 40.0;
  const double span = pulse.kind == PulseKind::gaussian_sine ? pulse.t0 + 12.0 * pulse.envelope_width()
                                                            : cfg.duration;
  const SampledSignal s = sample_pulse(pulse, dt, static_cast<std::size_t>(std::ceil(span / dt)) + 1);
  const std::vector<double> f = linspace(0.0, 4.0 * pulse.f0, 401);
  const Spectrum spec = spectrum(s, f);
  std::string text = "# f_hz magnitude\n";
  for (std::size_t k = 0; k < f.size(); ++k) {
    text += g17(f[k]) + " " + g17(std::abs(spec.values[0][k])) + "\n";
  }
  if (o.out.empty()) {
    out << text;
  } else {
    write_file_atomic(o.out, text);
  }
  return kExitOk;
}

}  // namespace

int run_command(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.command == "simulate") return cmd_simulate(o, out, err);
    if (o.command == "image") return cmd_image(o, o.method, false, out);
    if (o.command == "tfm-image") return cmd_image(o, "tfm", false, out);
    if (o.command == "aperture") return cmd_image(o, "dsm", true, out);
    if (o.command == "verify") return cmd_verify(o, out);
    if (o.command == "spectrum") return cmd_spectrum(o, out);
    err << "error: unknown command '" << o.command << "'\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace tdsm
