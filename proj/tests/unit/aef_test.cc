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

#include <filesystem>

#include "osr/aef.h"
#include "osr/error.h"
#include "osr/model.h"
#include "osr/syscalls.h"
#include "osr/trace.h"

namespace osr::aef {
namespace {

SyscallEvent ev(uint64_t seq, const std::string& pid, const std::string& name,
                std::map<std::string, std::string> args = {}) {
  return {seq, ProcessId{pid}, name, std::move(args)};
}

struct AefTest : ::testing::Test {
  StoreImage img = bootstrap_default_state();
  Adf adf;
  Aef sim{adf};
  ProcessId shell;
  void SetUp() override { shell = login(sim, img, kRootUser); }
};

TEST(Trace, ParsesPercentEncodedArgsAndComments) {
  auto t = parse_trace("# boot\n1 1 open path=/tmp/a%20b flags=rdonly\n\n2 1 exit\n");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].args.at("path"), "/tmp/a b");
  EXPECT_EQ(t[1].name, "exit");
  EXPECT_EQ(parse_trace(format_event(t[0]))[0], t[0]);
}

TEST(Trace, RejectsNonIncreasingSequence) {
  try {
    parse_trace("2 1 exit\n2 1 exit\n", "t.trace");
    FAIL();
  } catch (const OsrError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTraceParseError);
    EXPECT_NE(std::string(e.what()).find("t.trace:2"), std::string::npos);
  }
  EXPECT_THROW(parse_trace("x 1 exit\n"), OsrError);
  EXPECT_THROW(parse_trace("1 1 open pathonly\n"), OsrError);
}

TEST(Trace, BootTraceShipsWithTheData) {
  auto t = load_trace(std::filesystem::path(OSR_DATA_DIR) / "boot.trace");
  EXPECT_GE(t.size(), 10u);
}

TEST(Syscalls, SpellingVariantsCanonicalize) {
  EXPECT_EQ(canonical_syscall("Fork"), "fork");
  EXPECT_TRUE(canonical_syscall("execve").has_value());
  EXPECT_FALSE(canonical_syscall("frobnicate").has_value());
  EXPECT_TRUE(is_unmediated("getpid"));
  EXPECT_EQ(parent_path("/a/b"), "/a");
  EXPECT_EQ(parent_path("/a"), "/");
  EXPECT_FALSE(parent_path("/").has_value());
}

TEST_F(AefTest, LoginGivesTheUserRolesAndANewPid) {
  const auto& p = img.process(shell);
  EXPECT_EQ(p.owner, kRootUser);
  EXPECT_EQ(p.active_roles, RoleSet{builtin::kGeneral});
  EXPECT_EQ(p.max_roles, p.active_roles);
  EXPECT_EQ(p.exec_file, ObjectId{"/bin/sh"});
}

TEST_F(AefTest, LoginOfUnknownUserFailsWithoutChangingState) {
  const StoreImage before = img;
  EXPECT_THROW(login(sim, img, UserId{"mallory"}), OsrError);
  EXPECT_TRUE(img == before);
}

TEST_F(AefTest, ForkInheritsRolesAndTypes) {
  auto rec = sim.apply_event(img, ev(1, shell.str(), "fork", {{"child", "77"}}));
  ASSERT_EQ(rec.outcome, Outcome::kAllowed) << to_jsonl(rec);
  const auto& child = img.process(ProcessId{"77"});
  EXPECT_EQ(child.active_roles, img.process(shell).active_roles);
  EXPECT_EQ(child.rac_types, img.process(shell).rac_types);
  EXPECT_EQ(child.parent, shell);
}

TEST_F(AefTest, CreatedFileTakesTheParentDirectoryType) {
  auto rec = sim.apply_event(img, ev(1, shell.str(), "open",
                                     {{"path", "/tmp/x"}, {"flags", "wronly,creat"}}));
  ASSERT_EQ(rec.outcome, Outcome::kAllowed) << to_jsonl(rec);
  EXPECT_EQ(img.object(ObjectId{"/tmp/x"}).rac_types, TypeSet{builtin::kDefaultType});
  EXPECT_EQ(derive_new_object_types(img, ObjectKind::kFile, {ObjectId{"/etc/osr"}, {}, {}}),
            TypeSet{builtin::kSecurityType});
  EXPECT_THROW(derive_new_object_types(img, ObjectKind::kFile, {}), OsrError);
}

TEST_F(AefTest, DeniedEventLeavesStateUntouched) {
  const StoreImage before = img;
  auto rec = sim.apply_event(img, ev(1, shell.str(), "open",
                                     {{"path", "/etc/osr/policy"}, {"flags", "rdonly"}}));
  EXPECT_EQ(rec.outcome, Outcome::kDenied);
  EXPECT_EQ(rec.generation_before, rec.generation_after);
  EXPECT_TRUE(img == before);
}

TEST_F(AefTest, UnmediatedAndUnknownCallsAreRecorded) {
  EXPECT_EQ(sim.apply_event(img, ev(1, shell.str(), "getpid")).outcome, Outcome::kUnmediated);
  auto rec = sim.apply_event(img, ev(2, shell.str(), "frobnicate"));
  EXPECT_EQ(rec.outcome, Outcome::kError);
  EXPECT_FALSE(rec.error.empty());
}

TEST_F(AefTest, ExecveTakesTheFileRoles) {
  model::add_role(img, [&] {
    RoleRecord r;
    r.id = RoleId{"tool"};
    r.name = "tool";
    r.permissions = PermissionSet::empty(img.registry);
    r.permissions.privilege(PrivilegeClass::kSys).set(2);
    return r;
  }());
  img.object(ObjectId{"/bin/vi"}).exec_file_roles = {RoleId{"tool"}};
  auto rec = sim.apply_event(img, ev(1, shell.str(), "execve", {{"path", "/bin/vi"}}));
  ASSERT_EQ(rec.outcome, Outcome::kAllowed) << to_jsonl(rec);
  const auto& p = img.process(shell);
  EXPECT_TRUE(p.active_roles.contains(RoleId{"tool"}));
  EXPECT_EQ(p.max_roles, p.active_roles);
  EXPECT_TRUE(p.effective_caps.test(2));
}

TEST_F(AefTest, StoreVariantPublishesOneGenerationPerAllowedEvent) {
  AciStore store(img);
  const uint64_t g = store.generation();
  sim.apply_event(store, ev(1, shell.str(), "mkdir", {{"path", "/tmp/d"}}));
  EXPECT_EQ(store.generation(), g + 1);
  sim.apply_event(store, ev(2, shell.str(), "open", {{"path", "/etc/osr/policy"}, {"flags", "rdonly"}}));
  EXPECT_EQ(store.generation(), g + 1);
  sim.apply_event(store, ev(3, shell.str(), "stat", {{"path", "/etc/passwd"}}));
  EXPECT_EQ(store.generation(), g + 1);
}

TEST_F(AefTest, ReplayIsDeterministicAndRestoresSwitches) {
  std::vector<SyscallEvent> trace = {
      ev(1, shell.str(), "rslx_switch", {{"module", "MAC"}, {"on", "0"}}),
      ev(2, shell.str(), "mkdir", {{"path", "/tmp/r"}}),
      ev(3, shell.str(), "sethostname"),
  };
  auto a = replay_trace(adf, img, trace);
  auto b = replay_trace(adf, img, trace);
  ASSERT_EQ(a.log.size(), 3u);
  EXPECT_EQ(a.log, b.log);
  EXPECT_TRUE(a.final_state == b.final_state);
  EXPECT_EQ(a.log[2].outcome, Outcome::kDenied);
  EXPECT_TRUE(a.final_state.objects.contains(ObjectId{"/tmp/r"}));
}

TEST_F(AefTest, JsonlRecordIsOneLine) {
  auto rec = sim.apply_event(img, ev(9, shell.str(), "stat", {{"path", "/etc/passwd"}}));
  const std::string line = to_jsonl(rec);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_NE(line.find("\"seq\":9"), std::string::npos);
}

}  // namespace
}  // namespace osr::aef
