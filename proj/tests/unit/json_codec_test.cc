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

#include "osr/aef.h"
#include "osr/error.h"
#include "osr/json_codec.h"

namespace osr::json {
namespace {

TEST(JsonCodec, AttrValuesConvertBothWays) {
  EXPECT_EQ(to_json(AttrValue{true}), Json(true));
  EXPECT_EQ(to_json(AttrValue{TokenSet{"a", "b"}}), Json::array({"a", "b"}));
  EXPECT_EQ(std::get<TokenSet>(attr_from_json(TokenSet{}, Json::array({"x"}))), TokenSet{"x"});
  EXPECT_EQ(std::get<TokenSet>(attr_from_json(TokenSet{}, Json("{x,y}"))),
            (TokenSet{"x", "y"}));
  EXPECT_EQ(std::get<PermissionBitVector>(attr_from_json(PermissionBitVector(3), Json("101"))),
            PermissionBitVector::from_string("101"));
  EXPECT_THROW(attr_from_json(true, Json::array()), OsrError);
}

TEST(JsonCodec, RoleFromJson) {
  const auto reg = RightsRegistry::defaults();
  Json j = {{"id", "clerk"},
            {"name", "Clerk"},
            {"app_privileges", "110"},
            {"fd_right_vectors_array", {{"default", std::string(reg.width(RightsCategory::kFd), '1')}}}};
  RoleRecord r = role_from_json(j, reg);
  EXPECT_EQ(r.id, RoleId{"clerk"});
  EXPECT_TRUE(r.permissions.has(PrivilegeClass::kApp, 0));
  EXPECT_FALSE(r.permissions.has(PrivilegeClass::kApp, 2));
  EXPECT_TRUE(r.permissions.has(RightsCategory::kFd, builtin::kDefaultType, 0));

  try {
    role_from_json({{"id", "x"}, {"colour", "red"}}, reg);
    FAIL();
  } catch (const OsrError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownAttribute);
  }
  EXPECT_THROW(role_from_json({{"name", "anon"}}, reg), OsrError);
}

TEST(JsonCodec, RequestRoundTrip) {
  Json j = {{"subject", "2"},
            {"request", "R_CHANGE_OWNER"},
            {"target_kind", "T_PROCESS"},
            {"target", "2"},
            {"params", {{"new_owner", "secadmin"}}}};
  AccessRequest r = request_from_json(j);
  EXPECT_EQ(r.type, RequestType::kChangeOwner);
  EXPECT_EQ(r.target.kind, TargetKind::kProcess);
  EXPECT_EQ(r.params.new_owner, UserId{"secadmin"});
  EXPECT_EQ(request_from_json(request_to_json(r)), r);
  EXPECT_THROW(request_from_json({{"subject", "2"}, {"request", "R_NOPE"}}), OsrError);
  EXPECT_THROW(request_from_json({{"request", "R_READ_OPEN"}}), OsrError);
}

TEST(JsonCodec, EntityAndDecision) {
  StoreImage img = aef::bootstrap_default_state();
  Json u = entity_to_json(img, {EntityKind::kUser, "secadmin"});
  EXPECT_EQ(u["id"], "secadmin");
  EXPECT_EQ(u["max_roles"], Json::array({"secadm"}));
  Decision d;
  d.verdict = Verdict::kDeny;
  d.reason = "CR";
  d.module_verdicts = {{"OSR", Verdict::kDeny}};
  Json dj = decision_to_json(d);
  EXPECT_EQ(dj["verdict"], "deny");
  EXPECT_EQ(dj["reason"], "CR");
  EXPECT_EQ(dj["module_verdicts"][0]["module"], "OSR");
  EXPECT_TRUE(registry_to_json(img.registry).contains("scd_types"));
}

}  // namespace
}  // namespace osr::json
