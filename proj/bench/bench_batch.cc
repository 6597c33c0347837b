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

// Serial reference vs OpenMP kernel for batch access decisions.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "osr/aef.h"
#include "osr/batch.h"
#include "osr/model.h"

namespace {

using namespace osr;

// Default state plus `users` logged-in shells and `files` extra files, so the
// request count grows with both arguments.
StoreImage make_state(int users, int files) {
  StoreImage img = aef::bootstrap_default_state();
  for (int f = 0; f < files; ++f) {
    const ObjectId id{"/tmp/f" + std::to_string(f)};
    img.objects.emplace(id, ObjectAci{id, ObjectKind::kFile,
                                      {f % 3 == 0 ? builtin::kSecurityType : builtin::kDefaultType},
                                      false, {}, aef::kRootDevice});
  }
  Adf adf;
  aef::Aef sim(adf);
  const UserId names[] = {aef::kRootUser, aef::kSysAdminUser, aef::kSecAdminUser,
                          aef::kAuditAdminUser};
  for (int u = 0; u < users; ++u) aef::login(sim, img, names[u % 4]);
  return img;
}

void run(benchmark::State& state, bool parallel) {
  const StoreImage img = make_state(static_cast<int>(state.range(0)),
                                    static_cast<int>(state.range(1)));
  const Adf adf;
  const auto requests = batch::enumerate_requests(adf, img);
  for (auto _ : state) {
    auto r = parallel ? batch::decide_parallel(adf, img, requests)
                      : batch::decide_serial(adf, img, requests);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(requests.size()));
  state.counters["requests"] = static_cast<double>(requests.size());
  state.counters["threads"] = parallel ? omp_get_max_threads() : 1;
}

void BM_DecideSerial(benchmark::State& state) { run(state, false); }
void BM_DecideParallel(benchmark::State& state) { run(state, true); }

BENCHMARK(BM_DecideSerial)->Args({4, 50})->Args({16, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecideParallel)->Args({4, 50})->Args({16, 200})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
