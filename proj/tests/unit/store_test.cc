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

#include <thread>

#include "osr/aef.h"
#include "osr/error.h"
#include "osr/store.h"
#include "temp_dir.h"

namespace osr {
namespace {

TEST(Store, SuccessfulMutationBumpsGenerationOnce) {
  AciStore store(aef::bootstrap_default_state());
  const uint64_t g = store.generation();
  store.assign_max_roles(aef::kRootUser, {builtin::kGeneral, builtin::kSysAdmin});
  EXPECT_EQ(store.generation(), g + 1);
  EXPECT_TRUE(store.snapshot()->dirty());
}

TEST(Store, FailedMutationPublishesNothing) {
  AciStore store(aef::bootstrap_default_state());
  auto before = store.snapshot();
  EXPECT_THROW(store.assign_max_roles(aef::kRootUser, {builtin::kSysAdmin, builtin::kSecAdmin}),
               OsrError);
  EXPECT_EQ(store.snapshot(), before);
  EXPECT_FALSE(store.mutate_if([](StoreImage&, Journal&) { return false; }));
  EXPECT_EQ(store.snapshot(), before);
}

TEST(Store, SnapshotsAreImmutable) {
  AciStore store(aef::bootstrap_default_state());
  auto old = store.snapshot();
  store.set_attr({EntityKind::kObject, "/tmp"}, "rac_types",
                 TokenSet{builtin::kAuditType.str()});
  EXPECT_EQ(old->object(ObjectId{"/tmp"}).rac_types, TypeSet{builtin::kDefaultType});
  EXPECT_EQ(std::get<TokenSet>(store.get_attr({EntityKind::kObject, "/tmp"}, "RAC_TYPES")),
            TokenSet{"audit"});
}

TEST(Store, AttributeErrors) {
  AciStore store(aef::bootstrap_default_state());
  EXPECT_THROW(store.get_attr({EntityKind::kUser, "nobody"}, "max_roles"), OsrError);
  EXPECT_THROW(store.get_attr({EntityKind::kUser, "root"}, "colour"), OsrError);
  EXPECT_THROW(store.set_attr({EntityKind::kUser, "root"}, "max_roles", true), OsrError);
  EXPECT_THROW(store.set_attr({EntityKind::kProcess, "1"}, "effective_caps",
                              PermissionBitVector(12)),
               OsrError);
}

TEST(Store, ConcurrentWritersAreSerialized) {
  AciStore store(aef::bootstrap_default_state());
  const uint64_t g = store.generation();
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&store, t] {
      for (int i = 0; i < 25; ++i) {
        store.mutate([&](StoreImage& img, Journal&) {
          const ObjectId id{"/tmp/t" + std::to_string(t) + "-" + std::to_string(i)};
          img.objects.emplace(id, ObjectAci{id, ObjectKind::kFile, {builtin::kDefaultType},
                                            false, {}, aef::kRootDevice});
        });
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(store.generation(), g + 100);
}

TEST(Store, FlushAndLoad) {
  testing::TempDir tmp;
  AciStore store(aef::bootstrap_default_state());
  store.assign_max_roles(aef::kRootUser, {builtin::kGeneral, builtin::kSysAdmin});
  EXPECT_TRUE(store.flush(tmp.path));
  EXPECT_FALSE(store.snapshot()->dirty());
  EXPECT_FALSE(store.flush(tmp.path));
  auto loaded = AciStore::load(tmp.path);
  EXPECT_EQ(loaded->snapshot()->user(aef::kRootUser).max_roles,
            (RoleSet{builtin::kGeneral, builtin::kSysAdmin}));
}

TEST(Store, PeriodicFlusherWritesOnStop) {
  testing::TempDir tmp;
  AciStore store(aef::bootstrap_default_state());
  {
    PeriodicFlusher flusher(store, tmp.path, std::chrono::milliseconds(10));
    store.assign_max_roles(aef::kRootUser, {builtin::kGeneral, builtin::kAuditor});
    flusher.stop();
    EXPECT_GE(flusher.flush_count(), 1u);
  }
  EXPECT_EQ(AciStore::load(tmp.path)->snapshot()->user(aef::kRootUser).max_roles,
            (RoleSet{builtin::kGeneral, builtin::kAuditor}));
}

}  // namespace
}  // namespace osr
