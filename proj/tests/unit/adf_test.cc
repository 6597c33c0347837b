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

#include <memory>

#include "oracles.h"
#include "osr/adf.h"
#include "osr/aef.h"
#include "osr/batch.h"
#include "osr/error.h"
#include "osr/model.h"
#include "random_policy.h"

namespace osr {
namespace {

struct Fixture : ::testing::Test {
  StoreImage img = aef::bootstrap_default_state();
  Adf adf;
  ProcessId root_shell;
  ProcessId secadm_shell;

  void SetUp() override {
    aef::Aef sim(adf);
    root_shell = aef::login(sim, img, aef::kRootUser);
    secadm_shell = aef::login(sim, img, aef::kSecAdminUser);
  }

  AccessRequest req(RequestType t, const ProcessId& who, TargetKind k, std::string id) {
    return {t, who, {k, std::move(id)}, {}};
  }
};

using AdfTest = Fixture;

TEST_F(AdfTest, OrdinaryRightOnDefaultTypeAllows) {
  auto d = adf.decide(img, req(RequestType::kReadOpen, root_shell, TargetKind::kFile, "/etc/passwd"));
  EXPECT_TRUE(d.allowed()) << describe(d);
  ASSERT_FALSE(d.module_verdicts.empty());
  EXPECT_EQ(d.module_verdicts.front().module, "OSR");
}

TEST_F(AdfTest, SecurityTypedFileDeniesGeneralRoleByCr) {
  auto d = adf.decide(img, req(RequestType::kReadOpen, root_shell, TargetKind::kFile,
                               "/etc/osr/policy"));
  EXPECT_FALSE(d.allowed());
  EXPECT_EQ(d.reason, "CR");
}

TEST_F(AdfTest, AttributeWritesNeedSecurityPrivilege) {
  auto r = req(RequestType::kModifyAttribute, root_shell, TargetKind::kFile, "/etc/passwd");
  EXPECT_EQ(adf.decide(img, r).reason, "CP_sec");
  r.subject = secadm_shell;
  EXPECT_TRUE(adf.decide(img, r).allowed());
}

TEST_F(AdfTest, SystemPrivilegeRowNeedsNoTarget) {
  auto d = adf.decide(img, req(RequestType::kMacShutdown, root_shell, TargetKind::kNone, ""));
  EXPECT_EQ(d.reason, "CP_sys");
  EXPECT_TRUE(adf.decide(img, req(RequestType::kMacShutdown, img.system_process,
                                  TargetKind::kNone, ""))
                  .allowed());
}

TEST_F(AdfTest, BlankCellAbstainsUnlessStrict) {
  auto r = req(RequestType::kSwitchLog, root_shell, TargetKind::kNone, "");
  EXPECT_TRUE(adf.decide(img, r).allowed());
  Adf strict(DecisionMatrix::builtin(), {true});
  auto d = strict.decide(img, r);
  EXPECT_FALSE(d.allowed());
  EXPECT_EQ(d.reason, "UNDEFINED_CELL");
}

TEST_F(AdfTest, ApplicationRightComesFromParams) {
  auto r = req(RequestType::kApplication, root_shell, TargetKind::kNone, "");
  EXPECT_THROW(adf.decide(img, r), OsrError);
  r.params.app_right = "approve-invoice";
  EXPECT_EQ(adf.decide(img, r).reason, "CP_app");
  r.params.app_right = "no-such-right";
  try {
    adf.decide(img, r);
    FAIL();
  } catch (const OsrError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnregisteredRight);
  }
}

TEST_F(AdfTest, UnknownSubjectOrTargetThrows) {
  try {
    adf.decide(img, req(RequestType::kReadOpen, ProcessId{"999"}, TargetKind::kFile, "/etc/passwd"));
    FAIL();
  } catch (const OsrError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSubjectNotFound);
  }
  try {
    adf.decide(img, req(RequestType::kReadOpen, root_shell, TargetKind::kFile, "/nope"));
    FAIL();
  } catch (const OsrError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTargetNotFound);
  }
}

TEST_F(AdfTest, ModuleDenyOverridesRolePolicy) {
  auto mac = std::make_shared<StubModule>("MAC");
  mac->set_verdict(RequestType::kReadOpen, Verdict::kDeny);
  adf.add_module(mac);
  auto r = req(RequestType::kReadOpen, root_shell, TargetKind::kFile, "/etc/passwd");
  auto d = adf.decide(img, r);
  EXPECT_FALSE(d.allowed());
  EXPECT_EQ(d.reason, "MODULE:MAC");
  mac->set_enabled(false);
  EXPECT_TRUE(adf.decide(img, r).allowed());
}

TEST(MetaPolicy, DenyOverrides) {
  std::vector<ModuleVerdict> v;
  EXPECT_EQ(combine_meta(v), Verdict::kAllow);
  v.push_back({"A", Verdict::kAllow});
  EXPECT_EQ(combine_meta(v), Verdict::kAllow);
  v.push_back({"B", Verdict::kDeny});
  EXPECT_EQ(combine_meta(v), Verdict::kDeny);
}

TEST(AdfOracle, OrdinaryAndPrivilegeChecksMatchBruteForce) {
  testing::Rng rng(11);
  Adf adf;
  for (int n = 0; n < 30; ++n) {
    const StoreImage img = testing::random_policy(rng);
    for (const auto& [pid, proc] : img.processes) {
      for (const auto& [oid, obj] : img.objects) {
        const TargetRef t{aef::target_kind_of(obj.kind), oid.str()};
        const auto cat = category_for(t.kind);
        for (const auto& right : img.registry.ordinary[static_cast<size_t>(cat)]) {
          auto type = parse_request_type("R_" + right);
          ASSERT_TRUE(type);
          EXPECT_EQ(adf.check_ordinary(img, proc, t, *type).passed,
                    testing::oracle_ordinary(img, pid, *type, t));
        }
      }
      for (auto cls : kAllPrivilegeClasses) {
        for (const auto& name : img.registry.privileges[static_cast<size_t>(cls)]) {
          EXPECT_EQ(adf.check_privilege(img, proc, cls, name).passed,
                    testing::oracle_privilege(img, pid, cls, name));
        }
      }
    }
  }
}

TEST(Batch, ParallelMatchesSerial) {
  testing::Rng rng(5);
  Adf adf;
  for (int n = 0; n < 10; ++n) {
    const StoreImage img = testing::random_policy(rng);
    auto requests = batch::enumerate_requests(adf, img);
    ASSERT_FALSE(requests.empty());
    // One request that errors, to check error slots line up.
    requests.push_back({RequestType::kReadOpen, ProcessId{"nobody"}, {TargetKind::kFile, "/f0"}, {}});
    auto serial = batch::decide_serial(adf, img, requests);
    auto parallel = batch::decide_parallel(adf, img, requests);
    EXPECT_EQ(serial, parallel);
    EXPECT_EQ(serial.decisions.size(), requests.size());
    EXPECT_FALSE(serial.errors.back().empty());
    EXPECT_EQ(batch::count_allowed(serial), batch::count_allowed(parallel));
  }
}

}  // namespace
}  // namespace osr
