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

#ifndef TDSM_IO_HPP
#define TDSM_IO_HPP

#include <string>

#include "tdsm/forward.hpp"
#include "tdsm/imaging.hpp"

namespace tdsm {

/// Writes text to path through a sibling temp file and rename(2), so readers
/// never see a half-written file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// TDSM-TRACES v1 text: header `TDSM-TRACES v1 <ns> <nt> <components> <dt>`,
/// ns receiver coordinate lines (x y z), then ns * nt data lines in receiver-major order.
std::string format_traces(const TraceSet& traces);
TraceSet parse_traces(const std::string& text);
void write_traces(const std::string& path, const TraceSet& traces);
TraceSet read_traces(const std::string& path);

/// Throws FormatError when the receiver count, component count or receiver
/// coordinates (to 1e-9 m) differ from what the scene expects.
void check_traces_match(const TraceSet& traces, const Scene& scene, int components);

/// TDSM-GRID v1 text: header `TDSM-GRID v1 <dim> <n per axis...> <min max per axis...> <sigma> <T>`,
/// one `#` metadata line (method, homogeneity, provenance), then one value per line, x fastest.
std::string format_grid(const IndicatorGrid& grid);
IndicatorGrid parse_grid(const std::string& text);
void write_grid(const std::string& path, const IndicatorGrid& grid);
IndicatorGrid read_grid(const std::string& path);

/// Binary 8-bit PGM of a normalized 2D grid, rows ordered by descending y.
std::string format_pgm(const IndicatorGrid& grid);
void write_pgm(const std::string& path, const IndicatorGrid& grid);

}  // namespace tdsm

#endif  // TDSM_IO_HPP
