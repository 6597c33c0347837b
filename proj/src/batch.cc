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

#include "osr/batch.h"

namespace osr::batch {
namespace {

void decide_one(const Adf& adf, const StoreImage& image,
                const AccessRequest& request, Decision& decision,
                std::string& error) {
  try {
    decision = adf.decide(image, request);
  } catch (const std::exception& e) {
    error = e.what();
  }
}

}  // namespace

BatchResult decide_serial(const Adf& adf, const StoreImage& image,
                          std::span<const AccessRequest> requests) {
  BatchResult out;
  out.decisions.resize(requests.size());
  out.errors.resize(requests.size());
  for (size_t i = 0; i < requests.size(); ++i) {
    decide_one(adf, image, requests[i], out.decisions[i], out.errors[i]);
  }
  return out;
}

BatchResult decide_parallel(const Adf& adf, const StoreImage& image,
                            std::span<const AccessRequest> requests) {
  BatchResult out;
  out.decisions.resize(requests.size());
  out.errors.resize(requests.size());
  const auto n = static_cast<std::ptrdiff_t>(requests.size());
  // Each iteration writes only its own slots; decide is a pure read.
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    decide_one(adf, image, requests[i], out.decisions[i], out.errors[i]);
  }
  return out;
}

std::vector<AccessRequest> enumerate_requests(const Adf& adf,
                                              const StoreImage& image) {
  std::vector<TargetRef> targets;
  for (const auto& [id, obj] : image.objects) {
    TargetKind k = obj.kind == ObjectKind::kFile   ? TargetKind::kFile
                   : obj.kind == ObjectKind::kDir  ? TargetKind::kDir
                   : obj.kind == ObjectKind::kIpc  ? TargetKind::kIpc
                                                   : TargetKind::kDev;
    targets.push_back({k, id.str()});
  }
  for (const auto& scd : image.registry.scd_types) {
    targets.push_back({TargetKind::kScd, scd});
  }

  std::vector<AccessRequest> out;
  for (const auto& [pid, proc] : image.processes) {
    for (const auto& t : targets) {
      for (RequestType r : all_request_types()) {
        CheckSpec spec = adf.matrix().lookup(r, t.kind);
        if (!spec.defined || !spec.checks.contains(CheckKind::kCR)) continue;
        out.push_back({r, pid, t, {}});
      }
    }
  }
  return out;
}

size_t count_allowed(const BatchResult& result) {
  const auto n = static_cast<std::ptrdiff_t>(result.decisions.size());
  size_t allowed = 0;
#pragma omp parallel for reduction(+ : allowed)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (result.errors[i].empty() && result.decisions[i].allowed()) ++allowed;
  }
  return allowed;
}

}  // namespace osr::batch
