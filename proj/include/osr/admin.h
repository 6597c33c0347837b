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

#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "osr/aef.h"
#include "osr/error.h"
#include "osr/json_codec.h"
#include "osr/store.h"

// Administration commands. Each verb is gated by exactly one decide on the
// caller before it touches the store; the CLI and the HTTP service both go
// through AdminService::execute.
namespace osr::admin {

using Json = json::Json;

enum class Verb {
  kGetAttr,
  kSetAttr,
  kGetUserAttr,
  kGetProcAttr,
  kGetFileDirAttr,
  kGetIpcAttr,
  kGetDevAttr,
  kSetUserAttr,
  kSetProcAttr,
  kSetFileDirAttr,
  kSetIpcAttr,
  kSetDevAttr,
  kAddDelRole,
  kAddRole,
  kDelRole,
  kGetRoleAttr,
  kSetRoleAttr,
  kActivateRole,
  kCheckAppRight,
  kWhatIf,
  kSwitchModule,
  kSwitchLog,
  kListRoles,
  kListUsers,
  kListProcesses,
  kListObjects,
  kGetRegistry,
};

struct VerbInfo {
  Verb verb;
  std::string_view name;
  // Request type of the gating decision.
  RequestType gate;
  bool mutates_store;
  // Payload fields, for help output.
  std::string_view usage;
};

std::span<const VerbInfo> verb_table();
const VerbInfo* find_verb(std::string_view name);

struct AdminCommand {
  std::string verb;
  ProcessId caller;
  Json payload = Json::object();
};

struct AdminResponse {
  std::string verb;
  bool ok = false;
  Json result;
  std::optional<ErrorCode> error;
  std::string message;
  std::string entity;
  // Gate decision on PermissionDenied; the queried decision for what_if and
  // check_app_right.
  std::optional<Decision> decision;
  uint64_t generation = 0;

  // {"ok":true,"verb","result","generation"} or
  // {"ok":false,"verb","error":{"code","message","entity"},"decision"?,"generation"}
  Json to_json() const;
};

class AdminService {
 public:
  AdminService(AciStore& store, Adf& adf, aef::Aef& aef);

  AdminResponse execute(const AdminCommand& command);

  AciStore& store() { return store_; }
  Adf& adf() { return adf_; }
  aef::Aef& aef() { return aef_; }

  // Called after every gating decide, before the verb body runs. `generation`
  // is the generation of the image the gate was evaluated on.
  using GateObserver = std::function<void(const AdminCommand&, const AccessRequest&,
                                          const Decision&, uint64_t generation)>;
  void set_gate_observer(GateObserver observer) { observer_ = std::move(observer); }
  // One JSON line per executed command (verb, caller, gate outcome, error).
  void set_audit_sink(std::function<void(const Json&)> sink) { audit_ = std::move(sink); }
  uint64_t gate_count() const { return gates_.load(); }

 private:
  Json dispatch(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);
  // Decides the gate request on `image`. Throws kPermissionDenied on deny
  // unless `deny_throws` is false.
  Decision gate(const StoreImage& image, const VerbInfo& info, const AdminCommand& cmd,
                const AccessRequest& request, AdminResponse& resp,
                bool deny_throws = true);

  Json get_attr(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);
  Json set_attr(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);
  Json add_roles(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);
  Json del_role(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);
  Json activate(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);
  Json check_app_right(const VerbInfo& info, const AdminCommand& cmd,
                       AdminResponse& resp);
  Json what_if(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);
  Json switch_module(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);
  Json switch_log(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);
  Json list(const VerbInfo& info, const AdminCommand& cmd, AdminResponse& resp);

  AciStore& store_;
  Adf& adf_;
  aef::Aef& aef_;
  GateObserver observer_;
  std::function<void(const Json&)> audit_;
  std::atomic<uint64_t> gates_{0};
};

}  // namespace osr::admin
