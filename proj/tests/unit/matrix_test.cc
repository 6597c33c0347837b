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

#include "osr/error.h"
#include "osr/matrix.h"
#include "osr/rights.h"

namespace osr {
namespace {

const DecisionMatrix& m() { return DecisionMatrix::builtin(); }

TEST(Matrix, EveryRequestTokenRoundTrips) {
  for (auto r : all_request_types()) {
    EXPECT_EQ(parse_request_type(to_string(r)), r);
    EXPECT_EQ(parse_request_type(enforcement_name(r)), r);
  }
  EXPECT_EQ(parse_request_type("R_SEARACH"), RequestType::kSearch);
  EXPECT_EQ(parse_request_type("CHECK_APP_RIGHT"), RequestType::kApplication);
  EXPECT_FALSE(parse_request_type("R_NOPE").has_value());
}

TEST(Matrix, OrdinaryCellsCarryCr) {
  auto cell = m().lookup(RequestType::kReadOpen, TargetKind::kFile);
  EXPECT_TRUE(cell.defined);
  EXPECT_TRUE(cell.checks.contains(CheckKind::kCR));
}

TEST(Matrix, PrivilegeRowsApplyToEveryColumn) {
  for (auto col : kMatrixColumns) {
    EXPECT_EQ(m().lookup(RequestType::kModifyAttribute, col).checks,
              std::set<CheckKind>{CheckKind::kCPSec});
    EXPECT_EQ(m().lookup(RequestType::kApplication, col).checks,
              std::set<CheckKind>{CheckKind::kCPApp});
  }
  EXPECT_EQ(m().lookup(RequestType::kMacShutdown, TargetKind::kNone).checks,
            std::set<CheckKind>{CheckKind::kCPSys});
}

TEST(Matrix, SwitchAndSearchRowsAreBlank) {
  for (auto r : {RequestType::kSwitchLog, RequestType::kSwitchModule, RequestType::kSearch}) {
    for (auto col : kMatrixColumns) EXPECT_FALSE(m().lookup(r, col).defined);
  }
}

TEST(Matrix, BindingsNameRegisteredPrivileges) {
  EXPECT_NO_THROW(m().validate_against(RightsRegistry::defaults()));
  auto b = m().privilege_binding(RequestType::kModifyAttribute);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->privilege_class, PrivilegeClass::kSec);
  EXPECT_FALSE(m().privilege_binding(RequestType::kApplication).has_value());
}

TEST(Matrix, DumpParsesBackToTheSameMatrix) {
  const std::string text(DecisionMatrix::builtin_text());
  auto parsed = DecisionMatrix::parse(text);
  for (auto r : all_request_types()) {
    for (auto col : kMatrixColumns) EXPECT_EQ(parsed.lookup(r, col), m().lookup(r, col));
  }
  EXPECT_EQ(parsed.dump(), m().dump());
}

TEST(Matrix, ParseErrorsNameTheLine) {
  try {
    DecisionMatrix::parse("row R_READ_OPEN T_FILE=CR\nrow R_BOGUS T_FILE=CR\n", "m.txt");
    FAIL() << "expected a parse error";
  } catch (const OsrError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("m.txt:2"), std::string::npos) << e.what();
  }
}

TEST(Matrix, UnknownTokensThrow) {
  EXPECT_THROW(m().lookup("R_NOPE", "T_FILE"), OsrError);
  EXPECT_THROW(m().lookup("R_READ_OPEN", "T_SOCKET"), OsrError);
}

}  // namespace
}  // namespace osr
