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

#include "tdsm/common.hpp"

#include <cstdlib>

#include <omp.h>

namespace tdsm {

int worker_count() {
  if (const char* env = std::getenv("TDSM_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) {
      return static_cast<int>(n);
    }
  }
  return omp_get_max_threads();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const int workers = worker_count();
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
  for (long long i = 0; i < count; ++i) {
    body(static_cast<std::size_t>(i));
  }
}

}  // namespace tdsm
