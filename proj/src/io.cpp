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

#include "tdsm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <unistd.h>

namespace tdsm {

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Splits text into lines without copying the payload twice.
class LineReader {
 public:
  explicit LineReader(const std::string& text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const auto end = text_.find('\n', pos_);
    const std::size_t stop = end == std::string::npos ? text_.size() : end;
    line = std::string_view(text_).substr(pos_, stop - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = stop + 1;
    ++line_no_;
    return true;
  }
  std::string_view require(const char* what) {
    std::string_view line;
    if (!next(line)) throw FormatError(std::string("unexpected end of file while reading ") + what);
    return line;
  }
  int line_no() const { return line_no_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > b) out.push_back(line.substr(b, i - b));
  }
  return out;
}

double to_double(std::string_view tok, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError("line " + std::to_string(line) + ": malformed number '" + std::string(tok) + "'");
  }
  return v;
}

std::size_t to_size(std::string_view tok, int line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError("line " + std::to_string(line) + ": malformed count '" + std::string(tok) + "'");
  }
  return v;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write failed for '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string format_traces(const TraceSet& t) {
  std::string out;
  out.reserve(t.values.size() * 25 + t.receivers.size() * 75 + 64);
  out += "TDSM-TRACES v1 " + std::to_string(t.n_receivers()) + " " + std::to_string(t.n_samples) +
         " " + std::to_string(t.components) + " " + g17(t.dt) + "\n";
  for (const Vec3& r : t.receivers) {
    out += g17(r.x()) + " " + g17(r.y()) + " " + g17(r.z()) + "\n";
  }
  for (std::size_t m = 0; m < t.n_receivers(); ++m) {
    for (std::size_t n = 0; n < t.n_samples; ++n) {
      for (int c = 0; c < t.components; ++c) {
        if (c > 0) out += ' ';
        out += g17(t.at(m, n, c));
      }
      out += '\n';
    }
  }
  return out;
}

TraceSet parse_traces(const std::string& text) {
  LineReader lines(text);
  const auto head = split(lines.require("header"));
  if (head.size() != 6 || head[0] != "TDSM-TRACES" || head[1] != "v1") {
    throw FormatError("not a TDSM-TRACES v1 file");
  }
  const std::size_t ns = to_size(head[2], 1);
  const std::size_t nt = to_size(head[3], 1);
  const std::size_t comps = to_size(head[4], 1);
  const double dt = to_double(head[5], 1);
  if (ns == 0 || nt == 0 || comps < 1 || comps > 3 || !(dt > 0.0)) {
    throw FormatError("trace header has invalid sizes or time step");
  }
  std::vector<Vec3> rx(ns);
  for (std::size_t m = 0; m < ns; ++m) {
    const auto tok = split(lines.require("receiver coordinates"));
    if (tok.size() != 3) {
      throw FormatError("line " + std::to_string(lines.line_no()) + ": expected 3 coordinates");
    }
    for (int a = 0; a < 3; ++a) rx[m][a] = to_double(tok[a], lines.line_no());
  }
  TraceSet t(std::move(rx), dt, nt, static_cast<int>(comps));
  for (std::size_t m = 0; m < ns; ++m) {
    for (std::size_t n = 0; n < nt; ++n) {
      const auto tok = split(lines.require("trace data"));
      if (tok.size() != comps) {
        throw FormatError("line " + std::to_string(lines.line_no()) + ": expected " +
                          std::to_string(comps) + " components");
      }
      for (std::size_t c = 0; c < comps; ++c) {
        t.at(m, n, static_cast<int>(c)) = to_double(tok[c], lines.line_no());
      }
    }
  }
  std::string_view extra;
  while (lines.next(extra)) {
    if (!split(extra).empty()) throw FormatError("trailing data after the last trace sample");
  }
  return t;
}

void write_traces(const std::string& path, const TraceSet& traces) {
  write_file_atomic(path, format_traces(traces));
}

TraceSet read_traces(const std::string& path) { return parse_traces(read_all(path)); }

void check_traces_match(const TraceSet& traces, const Scene& scene, int components) {
  const auto& expected = scene.receivers.positions;
  if (traces.n_receivers() != expected.size()) {
    throw FormatError("trace file has " + std::to_string(traces.n_receivers()) +
                      " receivers, the config describes " + std::to_string(expected.size()));
  }
  if (traces.components != components) {
    throw FormatError("trace file has " + std::to_string(traces.components) +
                      " components, the config expects " + std::to_string(components));
  }
  for (std::size_t m = 0; m < expected.size(); ++m) {
    if ((traces.receivers[m] - expected[m]).norm() > 1e-9) {
      throw FormatError("receiver " + std::to_string(m) + " in the trace file does not match the config");
    }
  }
}

std::string format_grid(const IndicatorGrid& g) {
  const int dim = g.grid.dim;
  std::string out = "TDSM-GRID v1 " + std::to_string(dim);
  for (int a = 0; a < dim; ++a) out += " " + std::to_string(g.grid.n);
  for (int a = 0; a < dim; ++a) out += " " + g17(g.grid.min[a]) + " " + g17(g.grid.max[a]);
  out += " " + g17(g.sigma) + " " + g17(g.T) + "\n";
  out += "# method=" + g.method + " homogeneity=" + g.homogeneity +
         " provenance=" + (g.provenance.empty() ? std::string("-") : g.provenance) + "\n";
  out.reserve(out.size() + g.values.size() * 25);
  for (double v : g.values) {
    out += g17(v);
    out += '\n';
  }
  return out;
}

IndicatorGrid parse_grid(const std::string& text) {
  LineReader lines(text);
  const auto head = split(lines.require("header"));
  if (head.size() < 3 || head[0] != "TDSM-GRID" || head[1] != "v1") {
    throw FormatError("not a TDSM-GRID v1 file");
  }
  const std::size_t dim = to_size(head[2], 1);
  if (dim != 2 && dim != 3) throw FormatError("grid dimension must be 2 or 3");
  if (head.size() != 3 + dim + 2 * dim + 2) throw FormatError("grid header has the wrong field count");
  IndicatorGrid g;
  g.grid.dim = static_cast<int>(dim);
  g.grid.n = to_size(head[3], 1);
  for (std::size_t a = 1; a < dim; ++a) {
    if (to_size(head[3 + a], 1) != g.grid.n) throw FormatError("grid axes must share one cell count");
  }
  for (std::size_t a = 0; a < dim; ++a) {
    g.grid.min[a] = to_double(head[3 + dim + 2 * a], 1);
    g.grid.max[a] = to_double(head[4 + dim + 2 * a], 1);
  }
  g.sigma = to_double(head[3 + 3 * dim], 1);
  g.T = to_double(head[4 + 3 * dim], 1);
  if (g.grid.n < 1) throw FormatError("grid cell count must be positive");

  const auto meta = lines.require("metadata");
  if (meta.empty() || meta[0] != '#') throw FormatError("line 2: expected the '#' metadata line");
  for (auto tok : split(meta.substr(1))) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string key(tok.substr(0, eq));
    const std::string value(tok.substr(eq + 1));
    if (key == "method") g.method = value;
    else if (key == "homogeneity") g.homogeneity = value;
    else if (key == "provenance") g.provenance = value == "-" ? "" : value;
  }
  const std::size_t count = g.grid.size();
  g.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto tok = split(lines.require("grid values"));
    if (tok.size() != 1) {
      throw FormatError("line " + std::to_string(lines.line_no()) + ": expected one value");
    }
    g.values[i] = to_double(tok[0], lines.line_no());
  }
  std::string_view extra;
  while (lines.next(extra)) {
    if (!split(extra).empty()) throw FormatError("trailing data after the last grid value");
  }
  return g;
}

void write_grid(const std::string& path, const IndicatorGrid& grid) {
  write_file_atomic(path, format_grid(grid));
}

IndicatorGrid read_grid(const std::string& path) { return parse_grid(read_all(path)); }

std::string format_pgm(const IndicatorGrid& g) {
  if (g.grid.dim != 2) throw std::invalid_argument("PGM output needs a 2D grid");
  const std::size_t n = g.grid.n;
  const double mx = g.max();
  std::string out = "P5\n# normalized indicator, linear 0-255, first row is the largest y\n" +
                    std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t j = n - 1 - row;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = mx > 0.0 ? g.values[g.grid.index({i, j, 0})] / mx : 0.0;
      out += static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
    }
  }
  return out;
}

void write_pgm(const std::string& path, const IndicatorGrid& grid) {
  write_file_atomic(path, format_pgm(grid));
}

}  // namespace tdsm
