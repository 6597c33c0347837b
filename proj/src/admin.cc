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

#include "osr/admin.h"

#include <algorithm>
#include <array>

#include "osr/error.h"
#include "osr/model.h"

namespace osr::admin {
namespace {

using R = RequestType;

constexpr std::array kVerbs = {
    VerbInfo{Verb::kGetAttr, "rfsos_get_attr", R::kReadAttribute, false,
             "kind=role|user|process|object id [attr]"},
    VerbInfo{Verb::kSetAttr, "rfsos_set_attr", R::kModifyAttribute, true,
             "kind id attr value"},
    VerbInfo{Verb::kGetUserAttr, "rfsos_get_user_attr", R::kReadAttribute, false,
             "id [attr]"},
    VerbInfo{Verb::kGetProcAttr, "rfsos_get_proc_attr", R::kReadAttribute, false,
             "id [attr]"},
    VerbInfo{Verb::kGetFileDirAttr, "rfsos_get_file_dir_attr", R::kReadAttribute, false,
             "id [attr]"},
    VerbInfo{Verb::kGetIpcAttr, "rfsos_get_ipc_attr", R::kReadAttribute, false,
             "id [attr]"},
    VerbInfo{Verb::kGetDevAttr, "rfsos_get_dev_attr", R::kReadAttribute, false,
             "id [attr]"},
    VerbInfo{Verb::kSetUserAttr, "rfsos_set_user_attr", R::kModifyAttribute, true,
             "id attr value"},
    VerbInfo{Verb::kSetProcAttr, "rfsos_set_proc_attr", R::kModifyAttribute, true,
             "id attr value"},
    VerbInfo{Verb::kSetFileDirAttr, "rfsos_set_file_dir_attr", R::kModifyAttribute, true,
             "id attr value"},
    VerbInfo{Verb::kSetIpcAttr, "rfsos_set_ipc_attr", R::kModifyAttribute, true,
             "id attr value"},
    VerbInfo{Verb::kSetDevAttr, "rfsos_set_dev_attr", R::kModifyAttribute, true,
             "id attr value"},
    VerbInfo{Verb::kAddDelRole, "rfsos_osr_add_del_role", R::kModifyAttribute, true,
             "op=add role|roles, or op=del id"},
    VerbInfo{Verb::kAddRole, "rfsos_osr_add_role", R::kModifyAttribute, true,
             "role | roles"},
    VerbInfo{Verb::kDelRole, "rfsos_osr_del_role", R::kModifyAttribute, true, "id"},
    VerbInfo{Verb::kGetRoleAttr, "rfsos_osr_get_role_attr", R::kReadAttribute, false,
             "id [attr]"},
    VerbInfo{Verb::kSetRoleAttr, "rfsos_osr_set_role_attr", R::kModifyAttribute, true,
             "id attr value"},
    VerbInfo{Verb::kActivateRole, "rfsos_osr_activate_role", R::kModifyAttribute, true,
             "[principal=process|user] [id] roles"},
    VerbInfo{Verb::kCheckAppRight, "rfsos_osr_check_app_right", R::kApplication, false,
             "right [subject]"},
    VerbInfo{Verb::kWhatIf, "what_if", R::kReadAttribute, false,
             "subject request [target_kind] [target] [params]"},
    VerbInfo{Verb::kSwitchModule, "switch_module", R::kSwitchModule, false, "module on"},
    VerbInfo{Verb::kSwitchLog, "switch_log", R::kSwitchLog, false, "on"},
    VerbInfo{Verb::kListRoles, "list_roles", R::kReadAttribute, false, ""},
    VerbInfo{Verb::kListUsers, "list_users", R::kReadAttribute, false, ""},
    VerbInfo{Verb::kListProcesses, "list_processes", R::kReadAttribute, false, ""},
    VerbInfo{Verb::kListObjects, "list_objects", R::kReadAttribute, false, ""},
    VerbInfo{Verb::kGetRegistry, "get_registry", R::kReadAttribute, false, ""},
};

[[noreturn]] void bad_args(const std::string& msg) {
  throw OsrError(ErrorCode::kBadArguments, msg);
}

std::string str_field(const Json& p, const char* key) {
  if (!p.contains(key)) bad_args(std::string("missing field '") + key + "'");
  const Json& v = p.at(key);
  if (!v.is_string()) bad_args(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> opt_str(const Json& p, const char* key) {
  if (!p.contains(key) || p.at(key).is_null()) return std::nullopt;
  return str_field(p, key);
}

bool bool_field(const Json& p, const char* key) {
  if (!p.contains(key)) bad_args(std::string("missing field '") + key + "'");
  const Json& v = p.at(key);
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "1" || s == "true" || s == "on") return true;
    if (s == "0" || s == "false" || s == "off") return false;
  }
  bad_args(std::string("field '") + key + "' must be a boolean");
}

// Entity the attribute verbs address plus the target the gate is asked about.
struct Resolved {
  EntityRef entity;
  TargetRef target;
};

TargetRef object_target(const ObjectAci& o) {
  switch (o.kind) {
    case ObjectKind::kFile: return {TargetKind::kFile, o.id.str()};
    case ObjectKind::kDir: return {TargetKind::kDir, o.id.str()};
    case ObjectKind::kDevice: return {TargetKind::kDev, o.id.str()};
    case ObjectKind::kIpc: return {TargetKind::kIpc, o.id.str()};
  }
  return {};
}

[[noreturn]] void not_found(const std::string& what, const std::string& id) {
  throw OsrError(ErrorCode::kNotFound, "no " + what + " '" + id + "'", id);
}

Resolved resolve_entity(const StoreImage& img, EntityKind kind, const std::string& id) {
  switch (kind) {
    case EntityKind::kRole:
      if (!img.roles.contains(RoleId{id})) not_found("role", id);
      return {{kind, id}, {TargetKind::kNone, ""}};
    case EntityKind::kUser:
      if (!img.users.contains(UserId{id})) not_found("user", id);
      return {{kind, id}, {TargetKind::kNone, ""}};
    case EntityKind::kProcess:
      if (!img.processes.contains(ProcessId{id})) not_found("process", id);
      return {{kind, id}, {TargetKind::kProcess, id}};
    case EntityKind::kObject: {
      auto it = img.objects.find(ObjectId{id});
      if (it == img.objects.end()) not_found("object", id);
      return {{kind, id}, object_target(it->second)};
    }
  }
  not_found("entity", id);
}

Resolved resolve(const StoreImage& img, Verb verb, const Json& payload) {
  const std::string id = str_field(payload, "id");
  auto object_of = [&](std::initializer_list<ObjectKind> kinds, const char* what) {
    Resolved r = resolve_entity(img, EntityKind::kObject, id);
    const ObjectKind k = img.object(ObjectId{id}).kind;
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) not_found(what, id);
    return r;
  };
  switch (verb) {
    case Verb::kGetAttr:
    case Verb::kSetAttr: {
      const std::string k = str_field(payload, "kind");
      auto kind = parse_entity_kind(k);
      if (!kind) bad_args("unknown entity kind '" + k + "'");
      return resolve_entity(img, *kind, id);
    }
    case Verb::kGetUserAttr:
    case Verb::kSetUserAttr:
      return resolve_entity(img, EntityKind::kUser, id);
    case Verb::kGetProcAttr:
    case Verb::kSetProcAttr:
      return resolve_entity(img, EntityKind::kProcess, id);
    case Verb::kGetFileDirAttr:
    case Verb::kSetFileDirAttr:
      return object_of({ObjectKind::kFile, ObjectKind::kDir}, "file or directory");
    case Verb::kGetIpcAttr:
    case Verb::kSetIpcAttr:
      return object_of({ObjectKind::kIpc}, "ipc object");
    case Verb::kGetDevAttr:
    case Verb::kSetDevAttr:
      return object_of({ObjectKind::kDevice}, "device");
    case Verb::kGetRoleAttr:
    case Verb::kSetRoleAttr:
      return resolve_entity(img, EntityKind::kRole, id);
    default:
      bad_args("verb has no attribute target");
  }
}

AccessRequest gate_request(const VerbInfo& info, const AdminCommand& cmd,
                           TargetRef target = {TargetKind::kNone, ""}) {
  AccessRequest r;
  r.type = info.gate;
  r.subject = cmd.caller;
  r.target = std::move(target);
  return r;
}

Json role_json(const StoreImage& img, const RoleId& id) {
  return json::entity_to_json(img, {EntityKind::kRole, id.str()});
}

}  // namespace

std::span<const VerbInfo> verb_table() { return kVerbs; }

const VerbInfo* find_verb(std::string_view name) {
  for (const auto& v : kVerbs) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

Json AdminResponse::to_json() const {
  Json j;
  j["ok"] = ok;
  j["verb"] = verb;
  if (ok) {
    j["result"] = result;
  } else {
    Json e;
    e["code"] = error ? std::string(osr::to_string(*error)) : std::string("Unknown");
    e["message"] = message;
    e["entity"] = entity;
    j["error"] = std::move(e);
  }
  if (decision) j["decision"] = json::decision_to_json(*decision);
  j["generation"] = generation;
  return j;
}

AdminService::AdminService(AciStore& store, Adf& adf, aef::Aef& aef)
    : store_(store), adf_(adf), aef_(aef) {}

Decision AdminService::gate(const StoreImage& image, const VerbInfo& info,
                            const AdminCommand& cmd, const AccessRequest& request,
                            AdminResponse& resp, bool deny_throws) {
  (void)info;
  Decision d = adf_.decide(image, request);
  ++gates_;
  if (observer_) observer_(cmd, request, d, image.generation);
  resp.decision = d;
  if (!d.allowed() && deny_throws) {
    std::string msg = cmd.verb + " denied for process '" + cmd.caller.str() + "': " +
                      d.reason;
    if (!d.detail.empty()) msg += " (" + d.detail + ")";
    throw OsrError(ErrorCode::kPermissionDenied, msg, cmd.caller.str());
  }
  if (deny_throws) resp.decision.reset();
  return d;
}

AdminResponse AdminService::execute(const AdminCommand& cmd) {
  AdminResponse resp;
  resp.verb = cmd.verb;
  try {
    const VerbInfo* info = find_verb(cmd.verb);
    if (!info) {
      throw OsrError(ErrorCode::kUnknownVerb, "unknown verb '" + cmd.verb + "'", cmd.verb);
    }
    if (!cmd.payload.is_object()) bad_args("payload must be a JSON object");
    resp.result = dispatch(*info, cmd, resp);
    resp.ok = true;
  } catch (const OsrError& e) {
    resp.ok = false;
    resp.error = e.code();
    resp.message = e.what();
    resp.entity = e.entity();
    resp.result = nullptr;
  } catch (const nlohmann::json::exception& e) {
    resp.ok = false;
    resp.error = ErrorCode::kBadArguments;
    resp.message = std::string("BadArguments: ") + e.what();
    resp.result = nullptr;
  }
  resp.generation = store_.generation();
  if (audit_) {
    Json line;
    line["verb"] = cmd.verb;
    line["caller"] = cmd.caller.str();
    line["ok"] = resp.ok;
    if (resp.decision) {
      line["verdict"] = std::string(to_string(resp.decision->verdict));
      line["reason"] = resp.decision->reason;
    }
    if (!resp.ok) line["error"] = resp.message;
    line["generation"] = resp.generation;
    audit_(line);
  }
  return resp;
}

Json AdminService::dispatch(const VerbInfo& info, const AdminCommand& cmd,
                            AdminResponse& resp) {
  switch (info.verb) {
    case Verb::kGetAttr:
    case Verb::kGetUserAttr:
    case Verb::kGetProcAttr:
    case Verb::kGetFileDirAttr:
    case Verb::kGetIpcAttr:
    case Verb::kGetDevAttr:
    case Verb::kGetRoleAttr:
      return get_attr(info, cmd, resp);
    case Verb::kSetAttr:
    case Verb::kSetUserAttr:
    case Verb::kSetProcAttr:
    case Verb::kSetFileDirAttr:
    case Verb::kSetIpcAttr:
    case Verb::kSetDevAttr:
    case Verb::kSetRoleAttr:
      return set_attr(info, cmd, resp);
    case Verb::kAddDelRole: {
      const std::string op = str_field(cmd.payload, "op");
      if (op == "add") return add_roles(info, cmd, resp);
      if (op == "del" || op == "delete") return del_role(info, cmd, resp);
      bad_args("op must be 'add' or 'del'");
    }
    case Verb::kAddRole:
      return add_roles(info, cmd, resp);
    case Verb::kDelRole:
      return del_role(info, cmd, resp);
    case Verb::kActivateRole:
      return activate(info, cmd, resp);
    case Verb::kCheckAppRight:
      return check_app_right(info, cmd, resp);
    case Verb::kWhatIf:
      return what_if(info, cmd, resp);
    case Verb::kSwitchModule:
      return switch_module(info, cmd, resp);
    case Verb::kSwitchLog:
      return switch_log(info, cmd, resp);
    case Verb::kListRoles:
    case Verb::kListUsers:
    case Verb::kListProcesses:
    case Verb::kListObjects:
    case Verb::kGetRegistry:
      return list(info, cmd, resp);
  }
  throw OsrError(ErrorCode::kUnknownVerb, "unhandled verb '" + cmd.verb + "'");
}

Json AdminService::get_attr(const VerbInfo& info, const AdminCommand& cmd,
                            AdminResponse& resp) {
  auto img = store_.snapshot();
  const Resolved r = resolve(*img, info.verb, cmd.payload);
  gate(*img, info, cmd, gate_request(info, cmd, r.target), resp);
  if (auto attr = opt_str(cmd.payload, "attr")) {
    return json::to_json(osr::get_attr(*img, r.entity, *attr));
  }
  return json::entity_to_json(*img, r.entity);
}

Json AdminService::set_attr(const VerbInfo& info, const AdminCommand& cmd,
                            AdminResponse& resp) {
  const std::string attr = str_field(cmd.payload, "attr");
  if (!cmd.payload.contains("value")) bad_args("missing field 'value'");
  Json out;
  store_.mutate([&](StoreImage& img, Journal& journal) {
    const Resolved r = resolve(img, info.verb, cmd.payload);
    gate(img, info, cmd, gate_request(info, cmd, r.target), resp);
    const AttrValue like = osr::get_attr(img, r.entity, attr);
    osr::set_attr(img, r.entity, attr, json::attr_from_json(like, cmd.payload.at("value")),
                  &journal);
    out = json::to_json(osr::get_attr(img, r.entity, attr));
  });
  return out;
}

Json AdminService::add_roles(const VerbInfo& info, const AdminCommand& cmd,
                             AdminResponse& resp) {
  Json out = Json::array();
  store_.mutate([&](StoreImage& img, Journal& journal) {
    gate(img, info, cmd, gate_request(info, cmd), resp);
    std::vector<RoleRecord> records;
    if (cmd.payload.contains("roles")) {
      const Json& arr = cmd.payload.at("roles");
      if (!arr.is_array()) bad_args("'roles' must be an array");
      for (const auto& r : arr) records.push_back(json::role_from_json(r, img.registry));
    } else if (cmd.payload.contains("role")) {
      records.push_back(json::role_from_json(cmd.payload.at("role"), img.registry));
    } else {
      bad_args("missing field 'role' or 'roles'");
    }
    std::vector<RoleId> ids;
    for (const auto& r : records) ids.push_back(r.id);
    model::add_roles(img, std::move(records), &journal);
    for (const auto& id : ids) out.push_back(role_json(img, id));
  });
  if (!cmd.payload.contains("roles") && out.size() == 1) return out.at(0);
  return out;
}

Json AdminService::del_role(const VerbInfo& info, const AdminCommand& cmd,
                            AdminResponse& resp) {
  const RoleId id{str_field(cmd.payload, "id")};
  store_.mutate([&](StoreImage& img, Journal& journal) {
    if (!img.roles.contains(id)) not_found("role", id.str());
    gate(img, info, cmd, gate_request(info, cmd), resp);
    model::delete_role(img, id, &journal);
  });
  return Json{{"deleted", id.str()}};
}

Json AdminService::activate(const VerbInfo& info, const AdminCommand& cmd,
                            AdminResponse& resp) {
  const std::string principal = opt_str(cmd.payload, "principal").value_or("process");
  const std::string id = opt_str(cmd.payload, "id").value_or(cmd.caller.str());
  if (!cmd.payload.contains("roles")) bad_args("missing field 'roles'");
  const TokenSet tokens = std::get<TokenSet>(
      json::attr_from_json(TokenSet{}, cmd.payload.at("roles")));
  const RoleSet roles = from_strings<RoleId>(tokens);
  Json out;
  store_.mutate([&](StoreImage& img, Journal& journal) {
    Principal p;
    Resolved r;
    if (principal == "process") {
      r = resolve_entity(img, EntityKind::kProcess, id);
      p = ProcessId{id};
    } else if (principal == "user") {
      r = resolve_entity(img, EntityKind::kUser, id);
      p = UserId{id};
    } else {
      bad_args("principal must be 'process' or 'user'");
    }
    gate(img, info, cmd, gate_request(info, cmd, r.target), resp);
    model::activate_roles(img, p, roles, &journal);
    out = json::entity_to_json(img, r.entity);
  });
  return out;
}

Json AdminService::check_app_right(const VerbInfo& info, const AdminCommand& cmd,
                                   AdminResponse& resp) {
  auto img = store_.snapshot();
  AccessRequest req = gate_request(info, cmd);
  if (auto s = opt_str(cmd.payload, "subject")) req.subject = ProcessId{*s};
  req.params.app_right = str_field(cmd.payload, "right");
  const Decision d = gate(*img, info, cmd, req, resp, /*deny_throws=*/false);
  return Json{{"right", *req.params.app_right},
              {"subject", req.subject.str()},
              {"verdict", std::string(to_string(d.verdict))},
              {"decision", json::decision_to_json(d)}};
}

Json AdminService::what_if(const VerbInfo& info, const AdminCommand& cmd,
                           AdminResponse& resp) {
  auto img = store_.snapshot();
  gate(*img, info, cmd, gate_request(info, cmd), resp);
  const AccessRequest query = json::request_from_json(cmd.payload);
  const Decision d = adf_.decide(*img, query);
  resp.decision = d;
  return Json{{"request", json::request_to_json(query)},
              {"decision", json::decision_to_json(d)}};
}

Json AdminService::switch_module(const VerbInfo& info, const AdminCommand& cmd,
                                 AdminResponse& resp) {
  const std::string name = str_field(cmd.payload, "module");
  const bool on = bool_field(cmd.payload, "on");
  if (name == kRoleModuleName) bad_args("the OSR module cannot be switched");
  auto module = adf_.module(name);
  if (!module) not_found("policy module", name);
  auto img = store_.snapshot();
  gate(*img, info, cmd, gate_request(info, cmd), resp);
  module->set_enabled(on);
  return Json{{"module", name}, {"enabled", on}};
}

Json AdminService::switch_log(const VerbInfo& info, const AdminCommand& cmd,
                              AdminResponse& resp) {
  const bool on = bool_field(cmd.payload, "on");
  auto img = store_.snapshot();
  gate(*img, info, cmd, gate_request(info, cmd), resp);
  aef_.set_log_enabled(on);
  return Json{{"log_enabled", on}};
}

Json AdminService::list(const VerbInfo& info, const AdminCommand& cmd,
                        AdminResponse& resp) {
  auto img = store_.snapshot();
  gate(*img, info, cmd, gate_request(info, cmd), resp);
  Json out = Json::array();
  switch (info.verb) {
    case Verb::kListRoles:
      for (const auto& [id, r] : img->roles) out.push_back(role_json(*img, id));
      break;
    case Verb::kListUsers:
      for (const auto& [id, u] : img->users) {
        out.push_back(json::entity_to_json(*img, {EntityKind::kUser, id.str()}));
      }
      break;
    case Verb::kListProcesses:
      for (const auto& [id, p] : img->processes) {
        out.push_back(json::entity_to_json(*img, {EntityKind::kProcess, id.str()}));
      }
      break;
    case Verb::kListObjects:
      for (const auto& [id, o] : img->objects) {
        out.push_back(json::entity_to_json(*img, {EntityKind::kObject, id.str()}));
      }
      break;
    default:
      return json::registry_to_json(img->registry);
  }
  return out;
}

}  // namespace osr::admin
