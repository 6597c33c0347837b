/*
 * Copyright (c) 2026 The osr-rbac Authors. All rights reserved.
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#pragma once

#include <span>
#include <vector>

#include "osr/adf.h"

// Batch evaluation of many access requests against one snapshot. The OpenMP
// kernel and the serial reference must produce identical results; tests and
// the benchmark compare them.
namespace osr::batch {

struct BatchResult {
  std::vector<Decision> decisions;
  // Requests that raised an error carry its message; decision is left default.
  std::vector<std::string> errors;

  friend bool operator==(const BatchResult&, const BatchResult&) = default;
};

BatchResult decide_serial(const Adf& adf, const StoreImage& image,
                          std::span<const AccessRequest> requests);
BatchResult decide_parallel(const Adf& adf, const StoreImage& image,
                            std::span<const AccessRequest> requests);

// Every (process, target, request type) triple whose matrix cell carries a CR
// check, over all processes, objects and SCD types of the image.
std::vector<AccessRequest> enumerate_requests(const Adf& adf,
                                              const StoreImage& image);

// Counts allow verdicts with an OpenMP reduction.
size_t count_allowed(const BatchResult& result);

}  // namespace osr::batch
