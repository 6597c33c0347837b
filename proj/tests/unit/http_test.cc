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

#include <httplib.h>

#include "admin_fixture.h"
#include "osr/http_service.h"

namespace osr::http {
namespace {

using admin::Json;

struct HttpTest : testing::AdminFixture {
  Service http{service};

  Reply call(const std::string& method, const std::string& path, const Json& body = nullptr,
             std::map<std::string, std::string> query = {}) {
    Request r;
    r.method = method;
    r.path = path;
    r.query = std::move(query);
    if (!body.is_null()) r.body = body.dump();
    return http.handle(r);
  }
  Json json_of(const Reply& r) { return Json::parse(r.body); }
};

TEST_F(HttpTest, StatusAndVerbs) {
  auto s = call("GET", "/api/v1/status");
  ASSERT_EQ(s.status, 200);
  auto j = json_of(s);
  EXPECT_EQ(j["roles"], 5);
  EXPECT_TRUE(j["modules"]["MAC"].get<bool>());
  auto v = json_of(call("GET", "/api/v1/verbs"));
  EXPECT_EQ(v.size(), admin::verb_table().size());
}

TEST_F(HttpTest, AttributeRoutesUseTheCallerFromQuery) {
  auto r = call("GET", "/api/v1/attr/user", nullptr, {{"as", sec_shell.str()}, {"id", "root"}});
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(json_of(r)["result"]["max_roles"], Json::array({"general"}));
  auto denied = call("GET", "/api/v1/attr/user", nullptr, {{"as", root_shell.str()}, {"id", "root"}});
  EXPECT_EQ(denied.status, 403);
  EXPECT_EQ(json_of(denied)["decision"]["reason"], "CP_sec");
}

TEST_F(HttpTest, PutAttributeWithCallerInBody) {
  auto r = call("PUT", "/api/v1/attr/file_dir",
                {{"caller", sec_shell.str()}, {"id", "/tmp"}, {"attr", "rac_types"},
                 {"value", {"audit"}}});
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(store.snapshot()->object(ObjectId{"/tmp"}).rac_types, TypeSet{builtin::kAuditType});
}

TEST_F(HttpTest, RoleLifecycle) {
  auto add = call("POST", "/api/v1/roles",
                  {{"caller", sec_shell.str()}, {"role", {{"id", "clerk"}, {"name", "Clerk"}}}});
  ASSERT_EQ(add.status, 200) << add.body;
  auto get = call("GET", "/api/v1/roles/clerk", nullptr, {{"as", sec_shell.str()}});
  EXPECT_EQ(json_of(get)["result"]["name"], "Clerk");
  auto put = call("PUT", "/api/v1/roles/clerk",
                  {{"caller", sec_shell.str()}, {"attr", "name"}, {"value", "Teller"}});
  EXPECT_EQ(put.status, 200) << put.body;
  auto del = call("DELETE", "/api/v1/roles/clerk", nullptr, {{"as", sec_shell.str()}});
  EXPECT_EQ(del.status, 200) << del.body;
  auto gone = call("GET", "/api/v1/roles/clerk", nullptr, {{"as", sec_shell.str()}});
  EXPECT_EQ(gone.status, 404);
}

TEST_F(HttpTest, CommandRouteMatchesDirectExecution) {
  Json payload = {{"kind", "object"}, {"id", "/etc/passwd"}};
  auto via_http = json_of(call("POST", "/api/v1/command",
                               {{"verb", "rfsos_get_attr"}, {"caller", sec_shell.str()},
                                {"payload", payload}}));
  auto direct = service.execute({"rfsos_get_attr", sec_shell, payload}).to_json();
  EXPECT_EQ(via_http, direct);
}

TEST_F(HttpTest, LoginAndEvents) {
  auto login = call("POST", "/api/v1/login", {{"user", "audadmin"}});
  ASSERT_EQ(login.status, 200) << login.body;
  const std::string pid = json_of(login)["pid"];
  auto ev = call("POST", "/api/v1/events",
                 {{"pid", pid}, {"syscall", "open"},
                  {"args", {{"path", "/etc/osr/policy"}, {"flags", "rdonly"}}}});
  ASSERT_EQ(ev.status, 200) << ev.body;
  EXPECT_EQ(json_of(ev)["outcome"], "denied");
}

TEST_F(HttpTest, WhatIfAndCheckAppRight) {
  auto w = call("POST", "/api/v1/what-if",
                {{"caller", sec_shell.str()}, {"subject", root_shell.str()},
                 {"request", "R_READ_OPEN"}, {"target_kind", "T_FILE"}, {"target", "/etc/passwd"}});
  ASSERT_EQ(w.status, 200) << w.body;
  EXPECT_EQ(json_of(w)["result"]["decision"]["verdict"], "allow");
  auto c = call("POST", "/api/v1/check-app-right",
                {{"caller", root_shell.str()}, {"right", "export-data"}});
  ASSERT_EQ(c.status, 200);
  EXPECT_EQ(json_of(c)["result"]["verdict"], "deny");
}

TEST_F(HttpTest, ErrorStatuses) {
  EXPECT_EQ(call("GET", "/nowhere").status, 404);
  EXPECT_EQ(call("GET", "/api/v1/roles").status, 400);  // no caller
  Request bad{"POST", "/api/v1/command", {}, {}, "{not json"};
  EXPECT_EQ(http.handle(bad).status, 400);
  EXPECT_EQ(call("POST", "/api/v1/command", {{"verb", "nope"}, {"caller", "1"}}).status, 404);
  EXPECT_EQ(status_for(ErrorCode::kStaticConflict), 409);
  EXPECT_EQ(status_for(ErrorCode::kIoFailure), 500);
}

TEST_F(HttpTest, ServesOverARealSocket) {
  const int port = http.start("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/v1/roles?as=" + sec_shell.str());
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body)["result"].size(), 5u);
  httplib::Headers h = {{"X-OSR-Caller", root_shell.str()}};
  auto denied = client.Get("/api/v1/users", h);
  ASSERT_TRUE(denied);
  EXPECT_EQ(denied->status, 403);
  http.stop();
}

}  // namespace
}  // namespace osr::http
