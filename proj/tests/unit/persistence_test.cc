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

#include <fstream>

#include "osr/aef.h"
#include "osr/error.h"
#include "osr/persistence.h"
#include "random_policy.h"
#include "temp_dir.h"

namespace osr {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

StoreImage flushed_view(const StoreImage& img) {
  StoreImage v = persistence::persistent_view(img);
  v.flushed_generation = v.generation;
  return v;
}

TEST(Persistence, MissingDirectoryLoadsEmpty) {
  TempDir tmp;
  StoreImage img = persistence::load_store(tmp.path / "absent");
  EXPECT_TRUE(img.empty());
  EXPECT_EQ(img.generation, 0u);
}

TEST(Persistence, RoundTripDropsProcessesAndIpc) {
  TempDir tmp;
  StoreImage img = aef::bootstrap_default_state();
  img.objects.emplace(ObjectId{"q1"}, ObjectAci{ObjectId{"q1"}, ObjectKind::kIpc,
                                                {builtin::kDefaultType}, false, {}, ""});
  img.generation = 3;
  ASSERT_TRUE(persistence::flush_store(img, tmp.path));
  EXPECT_FALSE(img.dirty());
  StoreImage loaded = persistence::load_store(tmp.path);
  EXPECT_TRUE(loaded.processes.empty());
  EXPECT_FALSE(loaded.objects.contains(ObjectId{"q1"}));
  EXPECT_TRUE(loaded == flushed_view(img));
  EXPECT_FALSE(persistence::flush_store(img, tmp.path)) << "clean image rewrote files";
}

TEST(Persistence, RandomStoresRoundTrip) {
  TempDir tmp;
  testing::Rng rng(17);
  for (int n = 0; n < 25; ++n) {
    StoreImage img = testing::random_policy(rng);
    img.generation = n + 1;
    const fs::path dir = tmp.path / std::to_string(n);
    persistence::flush_store(img, dir);
    EXPECT_TRUE(persistence::load_store(dir) == flushed_view(img)) << n;
    auto files = persistence::serialize(img);
    EXPECT_TRUE(persistence::parse(files) == flushed_view(img));
  }
}

TEST(Persistence, NonAsciiNamesSurvive) {
  TempDir tmp;
  StoreImage img = aef::bootstrap_default_state();
  img.objects.emplace(ObjectId{"/home/root/报告 1.txt"},
                      ObjectAci{ObjectId{"/home/root/报告 1.txt"}, ObjectKind::kFile,
                                {builtin::kAuditType}, false, {}, aef::kRootDevice});
  img.generation = 1;
  persistence::flush_store(img, tmp.path);
  StoreImage loaded = persistence::load_store(tmp.path);
  EXPECT_EQ(loaded.role(builtin::kSecAdmin).name, "安全管理员");
  EXPECT_TRUE(loaded.objects.contains(ObjectId{"/home/root/报告 1.txt"}));
}

TEST(Persistence, ChecksumMismatchIsRejectedUntilSealed) {
  TempDir tmp;
  StoreImage img = aef::bootstrap_default_state();
  img.generation = 1;
  persistence::flush_store(img, tmp.path);
  {
    std::ofstream out(tmp.path / "users.aci", std::ios::app);
    out << "# hand edit\n";
  }
  EXPECT_THROW(persistence::load_store(tmp.path), OsrError);
  persistence::seal_store(tmp.path);
  EXPECT_NO_THROW(persistence::load_store(tmp.path));
}

TEST(Persistence, ParseErrorNamesFileAndLine) {
  TempDir tmp;
  StoreImage img = aef::bootstrap_default_state();
  img.generation = 1;
  auto files = persistence::serialize(img);
  files.roles += "garbage line without structure\n";
  try {
    persistence::parse(files, "s");
    FAIL();
  } catch (const OsrError& e) {
    EXPECT_NE(std::string(e.what()).find("roles.aci:"), std::string::npos) << e.what();
  }
}

TEST(Persistence, InterruptedFlushLeavesOldOrNew) {
  TempDir tmp;
  StoreImage old_img = aef::bootstrap_default_state();
  old_img.generation = 1;
  persistence::flush_store(old_img, tmp.path / "base");
  StoreImage new_img = old_img;
  new_img.users.emplace(UserId{"extra"}, UserAci{UserId{"extra"}, {}, {}, builtin::kDefaultType, {}});
  new_img.generation = 2;

  std::vector<std::string> labels;
  {
    StoreImage probe = new_img;
    persistence::flush_store(probe, tmp.path / "probe",
                             [&](std::string_view s) { labels.emplace_back(s); });
  }
  ASSERT_GE(labels.size(), 6u);
  for (const auto& label : labels) {
    const fs::path dir = tmp.path / ("crash-" + std::to_string(&label - labels.data()));
    fs::copy(tmp.path / "base", dir, fs::copy_options::recursive);
    StoreImage attempt = new_img;
    EXPECT_THROW(persistence::flush_store(attempt, dir,
                                          [&](std::string_view s) {
                                            if (s == label) throw std::runtime_error("crash");
                                          }),
                 OsrError);
    EXPECT_TRUE(attempt.dirty());
    StoreImage after = persistence::load_store(dir);
    EXPECT_TRUE(after == flushed_view(old_img) || after == flushed_view(new_img)) << label;
  }
}

}  // namespace
}  // namespace osr
