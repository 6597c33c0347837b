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

#include <gtest/gtest.h>

#include "oracles.h"
#include "osr/aef.h"
#include "osr/capability.h"
#include "osr/error.h"
#include "osr/model.h"
#include "random_policy.h"

namespace osr {
namespace {

TEST(Capability, SystemProcessHoldsEveryCapability) {
  StoreImage img = aef::bootstrap_default_state();
  for (const auto& name : img.registry.privileges[static_cast<size_t>(PrivilegeClass::kSys)]) {
    EXPECT_TRUE(capability::has_capability(img, img.system_process, name)) << name;
  }
}

TEST(Capability, GeneralRoleHoldsNone) {
  StoreImage img = aef::bootstrap_default_state();
  Adf adf;
  aef::Aef sim(adf);
  ProcessId shell = aef::login(sim, img, aef::kRootUser);
  EXPECT_TRUE(img.process(shell).effective_caps.none());
  EXPECT_FALSE(capability::has_capability(img, shell, "reboot"));
  EXPECT_THROW(capability::has_capability(img, shell, "fly"), OsrError);
  EXPECT_THROW(capability::has_capability(img, ProcessId{"404"}, "reboot"), OsrError);
}

TEST(Capability, ActivationRecomputesTheVector) {
  testing::Rng rng(3);
  StoreImage img = testing::random_capability_state(rng);
  for (const auto& [pid, proc] : img.processes) {
    auto expect = testing::oracle_caps(img, pid);
    for (size_t b = 0; b < expect.size(); ++b) EXPECT_EQ(proc.effective_caps.test(b), expect[b]);
  }
  Adf adf;
  aef::Aef sim(adf);
  const ProcessId pid = aef::login(sim, img, UserId{"op0"});
  auto expect = testing::oracle_caps(img, pid);
  for (size_t b = 0; b < expect.size(); ++b) {
    EXPECT_EQ(img.process(pid).effective_caps.test(b), expect[b]);
  }
  Journal j;
  model::activate_roles(img, pid, {}, &j);
  EXPECT_TRUE(img.process(pid).effective_caps.none());
}

TEST(Capability, CapsForRolesIsTheUnion) {
  StoreImage img = aef::bootstrap_default_state();
  auto caps = capability::caps_for_roles(img, {builtin::kSysAdmin, builtin::kGeneral});
  EXPECT_EQ(caps.count(), img.registry.width(PrivilegeClass::kSys));
  EXPECT_TRUE(capability::caps_for_roles(img, {builtin::kGeneral}).none());
}

}  // namespace
}  // namespace osr
