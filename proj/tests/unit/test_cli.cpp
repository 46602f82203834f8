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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "tdsm/commands.hpp"
#include "tdsm/config.hpp"
#include "tdsm/io.hpp"
#include "tdsm/pipeline.hpp"

using namespace tdsm;
namespace fs = std::filesystem;

namespace {

std::string replace_line(const std::string& text, const std::string& key, const std::string& line) {
  std::istringstream in(text);
  std::string out;
  std::string l;
  bool done = false;
  while (std::getline(in, l)) {
    if (!done && l.rfind(key + " =", 0) == 0) {
      out += line + "\n";
      done = true;
    } else {
      out += l + "\n";
    }
  }
  REQUIRE(done);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream b;
  b << in.rdbuf();
  return b.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tdsm-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  // Writes a config whose outputs land inside the directory.
  std::string config(const std::string& name, std::string text) {
    for (const char* key : {"output.traces", "output.grid", "output.pgm"}) {
      const std::string ext = std::string(key).substr(7);
      if (text.find(std::string(key) + " =") != std::string::npos) {
        text = replace_line(text, key, std::string(key) + " = " + (path / (name + "." + ext)).string());
      }
    }
    const fs::path p = path / (name + ".cfg");
    std::ofstream(p) << text;
    return p.string();
  }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(CommandOptions o) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(o, out, err);
  return {code, out.str(), err.str()};
}

CommandOptions opts(const std::string& command, const std::string& config) {
  CommandOptions o;
  o.command = command;
  o.config = config;
  return o;
}

}  // namespace

TEST_CASE("every bundled config parses") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_config(preset_text(name)));
  }
  const ExperimentConfig tm = parse_config(preset_text("paper_tm"));
  CHECK(tm.scene.dim == 2);
  CHECK(tm.mode == Mode2D::TM);
  CHECK(tm.scene.receivers.positions.size() == 48);
  CHECK(tm.scene.scatterers.size() == 3);
  CHECK(tm.scene.scatterers[2].half_widths.x() == doctest::Approx(0.1));
  CHECK(tm.scene.source.pulse.f0 == doctest::Approx(tm.scene.constants.c0()));
  CHECK(tm.solver.dt == 2e-10);
  CHECK(tm.imaging.T == 2e-7);
  CHECK(parse_config(preset_text("paper_te")).mode == Mode2D::TE);
  CHECK(parse_config(preset_text("paper_sawtooth")).scene.source.pulse.kind == PulseKind::smooth_sawtooth);
  CHECK_THROWS_AS(preset_text("nope"), ConfigError);
}

TEST_CASE("config errors name the key and the line") {
  const std::string base = preset_text("paper_tm");
  CHECK_THROWS_WITH_AS(parse_config(base + "scene.colour = red\n"), doctest::Contains("scene.colour"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(base + "solver.h = 0.05\n"), doctest::Contains("duplicate"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(base + "just words\n"), doctest::Contains("line"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(replace_line(base, "solver.h", "solver.h = 0.1m")),
                       doctest::Contains("line 24"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(replace_line(base, "scene.receivers.radius", "# gone")),
                       doctest::Contains("scene.receivers.radius: missing"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(replace_line(base, "scene.source.location", "scene.source.location = -8 0 0")),
                       doctest::Contains("expected 2 components"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "scene.pulse.f0 = 3e8\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "scene.pulse.smoothing = 1e18\n"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(base + "scene.scatterers.4.center = 0 0\n"), doctest::Contains("contiguous"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(replace_line(base, "scene.scatterers.1.eps_r", "")),
                       doctest::Contains("scene.scatterers.1.eps_r"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "scene.scatterers.01.center = 0 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(replace_line(base, "solver.h", "solver.h =")), ConfigError);
  CHECK_THROWS_AS(parse_config(preset_text("paper_te") + "scene.source.polarization = 0 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(preset_text("paper_3d_single") + "scene.mode = tm\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/tdsm.cfg"), ConfigError);
}

TEST_CASE("config rejection is total: every corrupted value is named") {
  const std::string base = preset_text("paper_tm");
  std::istringstream in(base);
  std::string line;
  int corrupted = 0;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    if (key.rfind("output.", 0) == 0) continue;  // any string is a valid path
    CAPTURE(key);
    CHECK_THROWS_WITH_AS(parse_config(replace_line(base, key, key + " = abc")), doctest::Contains(key.c_str()),
                         ConfigError);
    ++corrupted;
  }
  CHECK(corrupted > 20);
}

TEST_CASE("trace files round-trip exactly") {
  TraceSet t({Vec3(1.0 / 3.0, -2.0, 0.1), Vec3(6, 0, 0)}, 2e-10, 5, 2);
  double v = 0.1;
  for (double& x : t.values) {
    x = v;
    v = v * -1.7 + 1e-13;
  }
  t.values[3] = 5e-324;
  const TraceSet back = parse_traces(format_traces(t));
  CHECK(back.values == t.values);
  CHECK(back.dt == t.dt);
  CHECK(back.components == 2);
  CHECK(back.receivers[0] == t.receivers[0]);
  CHECK(format_traces(t).rfind("TDSM-TRACES v1 2 5 2 ", 0) == 0);

  CHECK_THROWS_AS(parse_traces("TDSM-TRACES v2 1 1 1 1\n0 0 0\n1\n"), FormatError);
  CHECK_THROWS_AS(parse_traces("TDSM-TRACES v1 1 2 1 1\n0 0 0\n1\n"), FormatError);
  CHECK_THROWS_AS(parse_traces("TDSM-TRACES v1 1 1 1 1\n0 0 0\n1 2\n"), FormatError);
  CHECK_THROWS_AS(parse_traces("TDSM-TRACES v1 1 1 1 1\n0 0 0\nx\n"), FormatError);
  CHECK_THROWS_AS(parse_traces("TDSM-TRACES v1 1 1 1 1\n0 0 0\n1\n7\n"), FormatError);
}

TEST_CASE("grid files round-trip exactly, metadata included") {
  IndicatorGrid g;
  g.grid.dim = 3;
  g.grid.n = 3;
  g.grid.min = Vec3(-2, -2, -1);
  g.grid.max = Vec3(2, 2, 1.5);
  g.sigma = 2e7;
  g.T = 1.3e-7;
  g.method = "tfm";
  g.homogeneity = "linear";
  g.provenance = "traces=a.traces,delta=0.2";
  for (int k = 0; k < 27; ++k) g.values.push_back(std::sqrt(double(k)) / 7.0);
  const IndicatorGrid back = parse_grid(format_grid(g));
  CHECK(back.values == g.values);
  CHECK(back.grid.n == 3);
  CHECK(back.grid.dim == 3);
  CHECK(back.grid.min == g.grid.min);
  CHECK(back.grid.max == g.grid.max);
  CHECK(back.sigma == g.sigma);
  CHECK(back.T == g.T);
  CHECK(back.method == "tfm");
  CHECK(back.homogeneity == "linear");
  CHECK(back.provenance == g.provenance);
  CHECK(format_grid(g).rfind("TDSM-GRID v1 3 3 3 3 -2 2 -2 2 -1 1.5 20000000 ", 0) == 0);
  CHECK_THROWS_AS(parse_grid("TDSM-GRID v1 2 2 2 0 1 0 1 0 1\n# x\n1\n2\n3\n"), FormatError);
}

TEST_CASE("PGM rows run from the largest y down") {
  IndicatorGrid g;
  g.grid.dim = 2;
  g.grid.n = 2;
  g.grid.max = Vec3(1, 1, 0);
  g.values = {0.0, 0.0, 4.0, 2.0};  // top row (j = 1) holds 4 and 2
  const std::string pgm = format_pgm(g);
  CHECK(pgm.rfind("P5\n# ", 0) == 0);
  const std::string body = pgm.substr(pgm.size() - 4);
  CHECK(static_cast<unsigned char>(body[0]) == 255);
  CHECK(static_cast<unsigned char>(body[1]) == 128);
  CHECK(static_cast<unsigned char>(body[2]) == 0);
}

TEST_CASE("trace headers are checked against the config") {
  const ExperimentConfig cfg = parse_config(preset_text("paper_tm"));
  TraceSet t(cfg.scene.receivers.positions, 2e-10, 3, 1);
  CHECK_NOTHROW(check_traces_match(t, cfg.scene, 1));
  CHECK_THROWS_AS(check_traces_match(t, cfg.scene, 2), FormatError);
  t.receivers[7].x() += 1e-6;
  CHECK_THROWS_AS(check_traces_match(t, cfg.scene, 1), FormatError);
  t.receivers.pop_back();
  CHECK_THROWS_AS(check_traces_match(t, cfg.scene, 1), FormatError);
}

TEST_CASE("simulate, image and tfm-image end to end") {
  TempDir dir;
  const std::string cfg = dir.config("tm", preset_text("paper_tm"));
  Run r = run(opts("simulate", cfg));
  REQUIRE(r.code == kExitOk);
  const TraceSet traces = read_traces((dir.path / "tm.traces").string());
  CHECK(traces.n_receivers() == 48);
  CHECK(traces.components == 1);

  r = run(opts("image", cfg));
  REQUIRE(r.code == kExitOk);
  const IndicatorGrid g = read_grid((dir.path / "tm.grid").string());
  CHECK(g.values.size() == 3600);
  CHECK(g.method == "dsm");
  CHECK(fs::exists(dir.path / "tm.pgm"));
  int lines = 0;
  std::istringstream peaks(r.out);
  for (std::string l; std::getline(peaks, l);) ++lines;
  CHECK(lines == 3);

  CommandOptions t = opts("tfm-image", cfg);
  t.out = (dir.path / "tfm.grid").string();
  REQUIRE(run(t).code == kExitOk);
  CHECK(read_grid(t.out).homogeneity == "linear");

  CommandOptions a = opts("aperture", cfg);
  a.theta_min = 0.0;
  a.theta_max = 2.0 * kPi;
  a.out = (dir.path / "full.grid").string();
  REQUIRE(run(a).code == kExitOk);
  CHECK(read_grid(a.out).values == g.values);

  a.theta_min = 0.01;
  a.theta_max = 0.02;
  CHECK(run(a).code == kExitConfig);
}

TEST_CASE("noisy imaging is reproducible byte for byte") {
  TempDir dir;
  const std::string cfg = dir.config("tm", preset_text("paper_tm"));
  REQUIRE(run(opts("simulate", cfg)).code == kExitOk);
  CommandOptions o = opts("image", cfg);
  o.delta = 0.2;
  o.seed = 42;
  o.out = (dir.path / "a.grid").string();
  REQUIRE(run(o).code == kExitOk);
  o.out = (dir.path / "b.grid").string();
  REQUIRE(run(o).code == kExitOk);
  CHECK(slurp(dir.path / "a.grid") == slurp(dir.path / "b.grid"));
  CHECK(slurp(dir.path / "a.grid") != slurp(dir.path / "tm.grid"));
}

TEST_CASE("exit codes") {
  TempDir dir;
  const std::string tm = dir.config("tm", preset_text("paper_tm"));
  const std::string te = dir.config("te", preset_text("paper_te"));
  REQUIRE(run(opts("simulate", te)).code == kExitOk);

  // TE traces (2 components) against the TM config.
  CommandOptions mismatch = opts("image", tm);
  mismatch.traces = (dir.path / "te.traces").string();
  CHECK(run(mismatch).code == kExitFormat);

  const std::string bad = dir.config("bad", preset_text("paper_tm") + "scene.colour = red\n");
  const Run b = run(opts("simulate", bad));
  CHECK(b.code == kExitConfig);
  CHECK(b.err.find("scene.colour") != std::string::npos);

  const std::string unstable =
      dir.config("unstable", replace_line(preset_text("paper_tm"), "solver.dt", "solver.dt = 5e-10"));
  CHECK(run(opts("simulate", unstable)).code == kExitSolver);

  CommandOptions v = opts("verify", "");
  v.suite = "nonsense";
  CHECK(run(v).code == kExitConfig);
  v.suite = "bessel";
  const Run ok = run(v);
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.rfind("CHECK bessel.lemma1 ", 0) == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  CHECK(run(opts("image", (dir.path / "missing.cfg").string())).code == kExitConfig);
  CHECK(run(opts("explode", tm)).code == kExitConfig);
}

TEST_CASE("spectrum command prints the pulse spectrum") {
  TempDir dir;
  const std::string cfg = dir.config("tm", preset_text("paper_tm"));
  const Run r = run(opts("spectrum", cfg));
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "# f_hz magnitude");
  double f = 0.0, mag = 0.0, best_f = 0.0, best = -1.0;
  int rows = 0;
  while (in >> f >> mag) {
    ++rows;
    if (mag > best) {
      best = mag;
      best_f = f;
    }
  }
  CHECK(rows == 401);
  const double f0 = parse_config(preset_text("paper_tm")).scene.source.pulse.f0;
  CHECK(std::abs(best_f - f0) <= 0.05 * f0);
}

TEST_CASE("contrast-free scene gives an all-zero payload") {
  TempDir dir;
  std::string text = preset_text("paper_tm");
  for (const char* k : {"scene.scatterers.0.eps_r", "scene.scatterers.1.eps_r", "scene.scatterers.2.eps_r"}) {
    text = replace_line(text, k, std::string(k) + " = 1");
  }
  const std::string cfg = dir.config("empty", text);
  REQUIRE(run(opts("simulate", cfg)).code == kExitOk);
  CHECK(read_traces((dir.path / "empty.traces").string()).max_abs() == 0.0);
}

TEST_CASE("3D Born config writes 294 receivers") {
  TempDir dir;
  const std::string cfg = dir.config("cube", preset_text("paper_3d_single"));
  const Run r = run(opts("simulate", cfg));
  REQUIRE(r.code == kExitOk);
  const TraceSet t = read_traces((dir.path / "cube.traces").string());
  CHECK(t.n_receivers() == 294);
  CHECK(t.components == 3);
}
