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

#include "osr/aef.h"

#include <nlohmann/json.hpp>

#include "osr/attributes.h"
#include "osr/error.h"
#include "osr/model.h"

namespace osr::aef {
namespace {

using ordered_json = nlohmann::ordered_json;

// --- bootstrap -----------------------------------------------------------

PermissionSet ordinary_on(const RightsRegistry& reg, std::initializer_list<TypeId> types,
                          bool all_scd) {
  PermissionSet p = PermissionSet::empty(reg);
  for (auto c : {RightsCategory::kFd, RightsCategory::kDev, RightsCategory::kProc,
                 RightsCategory::kIpc}) {
    for (const auto& t : types) p.table(c)[t] = PermissionBitVector::all(reg.width(c));
  }
  if (all_scd) {
    for (const auto& t : reg.type_keys(RightsCategory::kScd)) {
      p.table(RightsCategory::kScd)[t] =
          PermissionBitVector::all(reg.width(RightsCategory::kScd));
    }
  }
  return p;
}

RoleRecord make_role(RoleId id, std::string name, PermissionSet perms,
                     RoleSet static_conflicts, bool mutable_permissions) {
  RoleRecord r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.permissions = std::move(perms);
  r.static_conflict_roles = std::move(static_conflicts);
  r.mutable_permissions = mutable_permissions;
  return r;
}

struct SkeletonEntry {
  const char* path;
  ObjectKind kind;
  const TypeId* type;
  bool executable;
};

const SkeletonEntry kSkeleton[] = {
    {"/", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/bin", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/bin/sh", ObjectKind::kFile, &builtin::kDefaultType, true},
    {"/bin/login", ObjectKind::kFile, &builtin::kDefaultType, true},
    {"/bin/ls", ObjectKind::kFile, &builtin::kDefaultType, true},
    {"/bin/vi", ObjectKind::kFile, &builtin::kDefaultType, true},
    {"/dev", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/dev/hda", ObjectKind::kDevice, &builtin::kDefaultType, false},
    {"/dev/tty", ObjectKind::kDevice, &builtin::kDefaultType, false},
    {"/etc", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/etc/passwd", ObjectKind::kFile, &builtin::kDefaultType, false},
    {"/etc/osr", ObjectKind::kDir, &builtin::kSecurityType, false},
    {"/etc/osr/policy", ObjectKind::kFile, &builtin::kSecurityType, false},
    {"/home", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/home/root", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/lib", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/lib/modules", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/lib/modules/net.ko", ObjectKind::kFile, &builtin::kDefaultType, false},
    {"/mnt", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/sbin", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/sbin/osradm", ObjectKind::kFile, &builtin::kSecurityType, true},
    {"/sbin/auditd", ObjectKind::kFile, &builtin::kAuditType, true},
    {"/tmp", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/var", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/var/log", ObjectKind::kDir, &builtin::kDefaultType, false},
    {"/var/log/audit", ObjectKind::kDir, &builtin::kAuditType, false},
};

void add_user(StoreImage& image, const UserId& id, const RoleId& role,
              Journal* journal) {
  UserAci u;
  u.id = id;
  u.default_object_type = builtin::kDefaultType;
  image.users.emplace(id, u);
  model::assign_max_roles(image, id, {role}, journal);
  model::activate_roles(image, id, {role}, journal);
}

// --- replay helpers -------------------------------------------------------

std::string join(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& t : s) {
    if (out.size() > 1) out += ",";
    out += t;
  }
  return out + "}";
}

std::vector<std::string> ancestors(std::string_view path) {
  std::vector<std::string> out;
  auto p = parent_path(path);
  while (p) {
    out.push_back(*p);
    p = parent_path(*p);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// SEARCH requests for every existing directory on the way to each path
// argument, outermost first.
std::vector<AccessRequest> search_requests(const StoreImage& image,
                                           const SyscallEvent& e) {
  std::vector<AccessRequest> out;
  std::set<std::string> seen;
  for (const char* key : {"path", "to", "dev"}) {
    auto value = e.arg(key);
    if (!value || value->empty() || value->front() != '/') continue;
    for (const auto& dir : ancestors(*value)) {
      auto it = image.objects.find(ObjectId{dir});
      if (it == image.objects.end() || it->second.kind != ObjectKind::kDir) continue;
      if (!seen.insert(dir).second) continue;
      out.push_back({RequestType::kSearch, e.process, {TargetKind::kDir, dir}, {}});
    }
  }
  return out;
}

std::optional<TypeId> explicit_type_of(const SyscallEvent& e) {
  if (auto t = e.arg("type"); t && !t->empty()) return TypeId{*t};
  return std::nullopt;
}

void check_type_registered(const StoreImage& image, const std::optional<TypeId>& t) {
  if (t && !image.registry.has_object_type(*t)) {
    throw OsrError(ErrorCode::kNotFound, "type '" + t->str() + "' is not declared",
                   t->str());
  }
}

bool is_ipc_create(const std::string& n, const SyscallEvent& e) {
  if (n == "msgget" || n == "shmget") return true;
  auto call = e.arg("call").value_or("");
  if (n == "ipc") return call == "msgget" || call == "shmget" || call == "semget";
  if (n == "socketcall") return call == "socket";
  return false;
}

bool is_ipc_delete(const std::string& n, const SyscallEvent& e) {
  auto call = e.arg("call").value_or("");
  auto cmd = e.arg("cmd").value_or("");
  if (n == "msgctl") return cmd == "rmid";
  if (n == "ipc") {
    return (call == "msgctl" || call == "shmctl" || call == "semctl") && cmd == "rmid";
  }
  if (n == "socketcall") return call == "shutdown";
  return false;
}

// Objects and processes that must exist before deciding, so requests on the
// new entity (WRITE_OPEN after O_CREAT, NOTE_2 on the child) can resolve.
void create_provisional(StoreImage& image, const std::string& n,
                        const SyscallEvent& e,
                        const std::vector<AccessRequest>& requests) {
  if (n == "fork" || n == "clone") {
    const auto& clone = requests.back();
    ProcessAci child = image.process(e.process);
    child.id = ProcessId{clone.target.id};
    child.parent = e.process;
    image.processes.emplace(child.id, std::move(child));
    return;
  }
  const bool file_create = n == "create" || n == "mkdir" || n == "mknod" ||
                           n == "symlink" ||
                           (n == "open" && !requests.empty() &&
                            requests.front().type == RequestType::kCreate);
  if (file_create) {
    const std::string& path = e.require("path");
    ObjectAci o;
    o.id = ObjectId{path};
    o.kind = n == "mkdir" ? ObjectKind::kDir
             : n == "mknod" ? ObjectKind::kDevice
                            : ObjectKind::kFile;
    auto type = explicit_type_of(e);
    check_type_registered(image, type);
    ObjectId parent{*parent_path(path)};
    o.rac_types = derive_new_object_types(image, o.kind, {parent, {}, type});
    o.device_id = image.object(parent).device_id;
    o.executable = o.kind == ObjectKind::kFile && e.arg("exec").value_or("0") == "1";
    image.objects.emplace(o.id, std::move(o));
    return;
  }
  if (is_ipc_create(n, e)) {
    ObjectId id{e.require("id")};
    if (image.objects.contains(id)) {
      throw OsrError(ErrorCode::kBadArguments,
                     "ipc object '" + id.str() + "' exists", id.str());
    }
    ObjectAci o;
    o.id = id;
    o.kind = ObjectKind::kIpc;
    auto type = explicit_type_of(e);
    check_type_registered(image, type);
    o.rac_types = derive_new_object_types(image, o.kind, {{}, e.process, type});
    image.objects.emplace(id, std::move(o));
  }
}

void erase_object(StoreImage& image, const std::string& id) {
  if (image.objects.erase(ObjectId{id}) == 0) {
    throw OsrError(ErrorCode::kTargetNotFound, "no object '" + id + "'", id);
  }
}

bool has_children(const StoreImage& image, const std::string& dir) {
  const std::string prefix = dir == "/" ? "/" : dir + "/";
  auto it = image.objects.lower_bound(ObjectId{prefix});
  return it != image.objects.end() && it->first.str().starts_with(prefix) &&
         it->first.str() != dir;
}

void rename_subtree(StoreImage& image, const std::string& from, const std::string& to) {
  std::vector<std::pair<ObjectId, ObjectAci>> moved;
  const std::string prefix = from + "/";
  for (auto it = image.objects.begin(); it != image.objects.end();) {
    const std::string& id = it->first.str();
    if (id == from || id.starts_with(prefix)) {
      ObjectAci o = std::move(it->second);
      o.id = ObjectId{to + id.substr(from.size())};
      moved.emplace_back(o.id, std::move(o));
      it = image.objects.erase(it);
    } else {
      ++it;
    }
  }
  for (auto& [id, o] : moved) image.objects.emplace(id, std::move(o));
}

void apply_set_attr(StoreImage& image, const SyscallEvent& e, Journal& journal) {
  auto kind = parse_entity_kind(e.require("kind"));
  if (!kind) {
    throw OsrError(ErrorCode::kBadArguments, "unknown entity kind '" +
                                                 e.require("kind") + "'");
  }
  std::string id = e.require("id");
  if (*kind == EntityKind::kProcess && id == "self") id = e.process.str();
  EntityRef ref{*kind, id};
  const std::string& attr = e.require("attr");
  AttrValue like = get_attr(image, ref, attr);
  set_attr(image, ref, attr, parse_attr_value(like, e.arg("value").value_or("")),
           &journal);
}

// Event-specific state change, run after every request was allowed.
void apply_effect(StoreImage& image, const std::string& n, const SyscallEvent& e,
                  Journal& journal) {
  if (n == "exec_ve") {
    const auto& file = image.object(ObjectId{e.require("path")});
    if (!file.executable) {
      throw OsrError(ErrorCode::kNotExecutable,
                     "'" + file.id.str() + "' is not executable", file.id.str());
    }
    image.process(e.process).exec_file = file.id;
  } else if (n == "setuid" || n == "setsuid" || n == "setreuid") {
    UserId user{e.require("user")};
    image.user(user);
    image.process(e.process).owner = user;
  } else if (n == "exit") {
    if (e.process == image.system_process) {
      throw OsrError(ErrorCode::kBadArguments, "the system process cannot exit",
                     e.process.str());
    }
    image.processes.erase(e.process);
  } else if (n == "unlink") {
    erase_object(image, e.require("path"));
  } else if (n == "rmdir") {
    const std::string& path = e.require("path");
    if (has_children(image, path)) {
      throw OsrError(ErrorCode::kBadArguments, "directory '" + path + "' not empty",
                     path);
    }
    erase_object(image, path);
  } else if (is_ipc_delete(n, e)) {
    erase_object(image, e.require("id"));
  } else if (n == "rename") {
    rename_subtree(image, e.require("path"), e.require("to"));
  } else if (n == "rslx_set_attr") {
    apply_set_attr(image, e, journal);
  }
}

// SR/ST directives bound to the request's target.
void apply_post(StoreImage& image, const AccessRequest& req, PostAction action,
                const SyscallEvent& e, Journal& journal) {
  const std::string trigger = std::string(to_string(req.type)) + "@" +
                              std::to_string(e.seq);
  if (req.target.kind == TargetKind::kProcess) {
    const ProcessId pid{req.target.id};
    ProcessAci& proc = image.process(pid);
    if (action == PostAction::kSR) {
      if (req.type == RequestType::kClone) {
        const ProcessAci& parent = image.process(*proc.parent);
        model::install_process_roles(image, pid, parent.max_roles,
                                     parent.active_roles, trigger, &journal);
      } else if (proc.exec_file) {
        RoleSet roles = derive_exec_roles(image, image.user(proc.owner),
                                          image.object(*proc.exec_file));
        model::install_process_roles(image, pid, roles, roles, trigger, &journal);
      } else {
        const UserAci& owner = image.user(proc.owner);
        model::install_process_roles(image, pid, owner.max_roles,
                                     owner.active_roles, trigger, &journal);
      }
    } else {
      TypeSet inherited = proc.rac_types;
      std::optional<ObjectId> exec;
      if (req.type == RequestType::kClone) {
        inherited = image.process(*proc.parent).rac_types;
      } else if (req.type == RequestType::kExecute) {
        exec = proc.exec_file;
      }
      proc.rac_types = derive_process_types(image, {proc.owner, inherited, exec});
    }
    return;
  }
  if (action != PostAction::kST) return;
  // ST on a creation cell: type the object that was created.
  if (req.target.kind == TargetKind::kDir && req.type == RequestType::kCreate) {
    ObjectAci& o = image.object(ObjectId{e.require("path")});
    o.rac_types = derive_new_object_types(
        image, o.kind, {ObjectId{req.target.id}, {}, req.params.explicit_type});
  } else if (req.target.kind == TargetKind::kIpc) {
    ObjectAci& o = image.object(ObjectId{req.target.id});
    o.rac_types = derive_new_object_types(image, o.kind,
                                          {{}, req.subject, req.params.explicit_type});
  }
}

std::string set_text(const RoleSet& s) { return join(to_strings(s)); }
std::string set_text(const TypeSet& s) { return join(to_strings(s)); }

void diff_states(const StoreImage& a, const StoreImage& b,
                 std::vector<std::string>& out) {
  for (const auto& [pid, p] : b.processes) {
    auto it = a.processes.find(pid);
    if (it == a.processes.end()) {
      out.push_back("process " + pid.str() + " created owner=" + p.owner.str() +
                    " active=" + set_text(p.active_roles) +
                    " types=" + set_text(p.rac_types) +
                    " caps=" + p.effective_caps.to_string());
      continue;
    }
    const auto& q = it->second;
    if (q.owner != p.owner) {
      out.push_back("process " + pid.str() + " owner " + q.owner.str() + "->" +
                    p.owner.str());
    }
    if (q.max_roles != p.max_roles) {
      out.push_back("process " + pid.str() + " max " + set_text(q.max_roles) +
                    "->" + set_text(p.max_roles));
    }
    if (q.active_roles != p.active_roles) {
      out.push_back("process " + pid.str() + " active " + set_text(q.active_roles) +
                    "->" + set_text(p.active_roles));
    }
    if (q.rac_types != p.rac_types) {
      out.push_back("process " + pid.str() + " types " + set_text(q.rac_types) +
                    "->" + set_text(p.rac_types));
    }
    if (q.effective_caps != p.effective_caps) {
      out.push_back("process " + pid.str() + " caps " + q.effective_caps.to_string() +
                    "->" + p.effective_caps.to_string());
    }
    if (q.exec_file != p.exec_file && p.exec_file) {
      out.push_back("process " + pid.str() + " exec " + p.exec_file->str());
    }
  }
  for (const auto& [pid, p] : a.processes) {
    if (!b.processes.contains(pid)) out.push_back("process " + pid.str() + " removed");
  }
  for (const auto& [id, o] : b.objects) {
    auto it = a.objects.find(id);
    if (it == a.objects.end()) {
      out.push_back("object " + id.str() + " created kind=" +
                    std::string(to_string(o.kind)) + " types=" + set_text(o.rac_types));
    } else if (!(it->second == o)) {
      out.push_back("object " + id.str() + " changed types=" + set_text(o.rac_types));
    }
  }
  for (const auto& [id, o] : a.objects) {
    if (!b.objects.contains(id)) out.push_back("object " + id.str() + " removed");
  }
  for (const auto& [id, u] : b.users) {
    auto it = a.users.find(id);
    if (it != a.users.end() && !(it->second == u)) {
      out.push_back("user " + id.str() + " max=" + set_text(u.max_roles) +
                    " active=" + set_text(u.active_roles));
    }
  }
  for (const auto& [id, r] : b.roles) {
    auto it = a.roles.find(id);
    if (it == a.roles.end() || !(it->second == r)) {
      out.push_back("role " + id.str() + " changed");
    }
  }
}

bool truthy(const std::string& s) { return s == "1" || s == "on" || s == "true"; }

}  // namespace

// --- bootstrap -------------------------------------------------------------

void bootstrap_default_state(StoreImage& image, const BootstrapOptions& options) {
  if (!image.empty()) {
    throw OsrError(ErrorCode::kStoreNotEmpty,
                   "bootstrap needs an empty store (found existing entities)");
  }
  image.registry = RightsRegistry::defaults();
  const auto& reg = image.registry;
  using namespace builtin;

  std::vector<RoleRecord> roles;
  RoleRecord trusted = make_role(kTrustedSysAdmin, "可信系统管理员",
                                 PermissionSet::full(reg), {}, false);
  trusted.kernel_only = true;
  roles.push_back(std::move(trusted));

  PermissionSet sys = ordinary_on(reg, {kDefaultType}, true);
  sys.privilege(PrivilegeClass::kSys) =
      PermissionBitVector::all(reg.width(PrivilegeClass::kSys));
  roles.push_back(make_role(kSysAdmin, "系统管理员", std::move(sys),
                            {kSecAdmin, kAuditor}, false));

  PermissionSet sec = ordinary_on(reg, {kDefaultType, kSecurityType}, false);
  sec.privilege(PrivilegeClass::kSec) =
      PermissionBitVector::all(reg.width(PrivilegeClass::kSec));
  roles.push_back(make_role(kSecAdmin, "安全管理员", std::move(sec),
                            {kSysAdmin, kAuditor}, false));

  PermissionSet aud = ordinary_on(reg, {kDefaultType, kAuditType}, false);
  aud.privilege(PrivilegeClass::kAud) =
      PermissionBitVector::all(reg.width(PrivilegeClass::kAud));
  roles.push_back(make_role(kAuditor, "安全审计员", std::move(aud),
                            {kSysAdmin, kSecAdmin}, false));

  roles.push_back(make_role(kGeneral, "通用角色",
                            ordinary_on(reg, {kDefaultType}, false), {}, true));
  model::add_roles(image, std::move(roles));

  add_user(image, kRootUser, kGeneral, nullptr);
  if (options.admin_users) {
    add_user(image, kSysAdminUser, kSysAdmin, nullptr);
    add_user(image, kSecAdminUser, kSecAdmin, nullptr);
    add_user(image, kAuditAdminUser, kAuditor, nullptr);
  }

  if (options.filesystem) {
    for (const auto& s : kSkeleton) {
      ObjectAci o;
      o.id = ObjectId{s.path};
      o.kind = s.kind;
      o.rac_types = {*s.type};
      o.executable = s.executable;
      o.device_id = kRootDevice;
      image.objects.emplace(o.id, std::move(o));
    }
  }
  ensure_system_process(image);
}

StoreImage bootstrap_default_state(const BootstrapOptions& options) {
  StoreImage image;
  bootstrap_default_state(image, options);
  return image;
}

void ensure_system_process(StoreImage& image, Journal* journal) {
  if (image.processes.contains(image.system_process)) return;
  if (image.users.empty()) {
    throw OsrError(ErrorCode::kMissingContext, "no user to own the system process");
  }
  ProcessAci init;
  init.id = image.system_process;
  init.owner = image.users.contains(kRootUser) ? kRootUser : image.users.begin()->first;
  init.rac_types = {builtin::kDefaultType};
  if (!image.registry.has_object_type(builtin::kDefaultType) &&
      !image.registry.object_types.empty()) {
    init.rac_types = {image.registry.object_types.front().id};
  }
  image.processes.emplace(init.id, init);
  RoleSet roles;
  for (const auto& [id, r] : image.roles) {
    if (r.kernel_only) roles.insert(id);
  }
  roles = model::reduce_redundant_parents(image.roles, roles);
  model::install_process_roles(image, init.id, roles, roles, "boot", journal);
}

// --- derivation ------------------------------------------------------------

TypeSet derive_new_object_types(const StoreImage& image, ObjectKind kind,
                                const NewObjectContext& ctx) {
  if (ctx.explicit_type) return {*ctx.explicit_type};
  if (kind == ObjectKind::kIpc) {
    if (!ctx.creator) {
      throw OsrError(ErrorCode::kMissingContext, "ipc creation needs the creating process");
    }
    return image.process(*ctx.creator).rac_types;
  }
  if (!ctx.parent_dir) {
    throw OsrError(ErrorCode::kMissingContext,
                   std::string(to_string(kind)) + " creation needs a parent directory");
  }
  return image.object(*ctx.parent_dir).rac_types;
}

RoleSet derive_exec_roles(const StoreImage& image, const UserAci& user,
                          const ObjectAci& exec_file) {
  if (exec_file.kind != ObjectKind::kFile || !exec_file.executable) {
    throw OsrError(ErrorCode::kNotExecutable,
                   "'" + exec_file.id.str() + "' is not an executable file",
                   exec_file.id.str());
  }
  RoleSet roles = exec_file.exec_file_roles;
  roles.insert(user.active_roles.begin(), user.active_roles.end());
  return model::reduce_redundant_parents(image.roles, roles);
}

TypeSet derive_process_types(const StoreImage& image, const ProcessTypeContext& ctx) {
  const UserAci& owner = image.user(ctx.owner);
  if (!owner.process_types_override.empty()) return owner.process_types_override;
  if (ctx.exec_file) {
    const auto& file = image.object(*ctx.exec_file);
    if (!file.rac_types.empty()) return file.rac_types;
  }
  return ctx.inherited;
}

// --- replay ------------------------------------------------------------------

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kAllowed: return "allowed";
    case Outcome::kDenied: return "denied";
    case Outcome::kUnmediated: return "unmediated";
    case Outcome::kError: return "error";
  }
  return "?";
}

std::string to_jsonl(const AuditRecord& r) {
  ordered_json j;
  j["seq"] = r.event.seq;
  j["pid"] = r.event.process.str();
  j["syscall"] = r.event.name;
  ordered_json args = ordered_json::object();
  for (const auto& [k, v] : r.event.args) args[k] = v;
  j["args"] = std::move(args);
  j["outcome"] = std::string(to_string(r.outcome));
  ordered_json reqs = ordered_json::array();
  for (size_t i = 0; i < r.requests.size(); ++i) {
    ordered_json q;
    q["request"] = std::string(to_string(r.requests[i].type));
    q["target"] = describe(r.requests[i].target);
    if (i < r.decisions.size()) {
      const auto& d = r.decisions[i];
      q["verdict"] = std::string(to_string(d.verdict));
      if (!d.allowed()) {
        q["reason"] = d.reason;
        q["detail"] = d.detail;
      }
      ordered_json post = ordered_json::array();
      for (auto a : d.post_actions) post.push_back(std::string(to_string(a)));
      q["post"] = std::move(post);
      ordered_json mods = ordered_json::object();
      for (const auto& m : d.module_verdicts) {
        mods[m.module] = std::string(to_string(m.verdict));
      }
      q["modules"] = std::move(mods);
    }
    reqs.push_back(std::move(q));
  }
  j["requests"] = std::move(reqs);
  if (!r.error.empty()) j["error"] = r.error;
  j["changes"] = r.changes;
  j["journal"] = r.journal;
  j["generation"] = {r.generation_before, r.generation_after};
  return j.dump();
}

Aef::Aef(Adf& adf, AefOptions options) : adf_(adf), options_(options) {}

AuditRecord Aef::apply_event(StoreImage& state, const SyscallEvent& e) {
  AuditRecord rec;
  rec.event = e;
  rec.generation_before = state.generation;
  rec.generation_after = state.generation;
  try {
    if (!state.processes.contains(e.process)) {
      throw OsrError(ErrorCode::kSubjectNotFound, "no process '" + e.process.str() + "'",
                     e.process.str());
    }
    auto canon = canonical_syscall(e.name);
    if (canon && is_unmediated(*canon)) {
      rec.outcome = Outcome::kUnmediated;
    } else {
      std::vector<AccessRequest> mapped = map_syscall_event(state, e);
      const std::string& n = *canon;
      rec.requests = search_requests(state, e);
      rec.requests.insert(rec.requests.end(), mapped.begin(), mapped.end());

      StoreImage scratch = state;
      create_provisional(scratch, n, e, mapped);
      bool all_allowed = true;
      for (const auto& req : rec.requests) {
        rec.decisions.push_back(adf_.decide(scratch, req));
        all_allowed = all_allowed && rec.decisions.back().allowed();
      }
      if (!all_allowed) {
        rec.outcome = Outcome::kDenied;
      } else {
        Journal journal;
        apply_effect(scratch, n, e, journal);
        for (size_t i = 0; i < rec.requests.size(); ++i) {
          // SR before ST: exec types depend on the installed exec file only.
          for (auto a : rec.decisions[i].post_actions) {
            apply_post(scratch, rec.requests[i], a, e, journal);
          }
        }
        if (options_.validate_each_event) model::validate_image(scratch);

        // Switches act outside the image; apply only once nothing can fail.
        if (n == "rslx_switch") {
          const std::string& name = e.require("module");
          auto module = adf_.module(name);
          if (!module) {
            throw OsrError(ErrorCode::kBadArguments, "no policy module '" + name + "'",
                           name);
          }
          module->set_enabled(truthy(e.require("on")));
        } else if (n == "rslx_adf_log_switch") {
          log_enabled_ = truthy(e.require("on"));
        }

        diff_states(state, scratch, rec.changes);
        rec.journal = std::move(journal.lines);
        scratch.generation = state.generation;
        if (!(scratch == state)) scratch.generation = state.generation + 1;
        rec.generation_after = scratch.generation;
        state = std::move(scratch);
        rec.outcome = Outcome::kAllowed;
      }
    }
  } catch (const OsrError& err) {
    rec.outcome = Outcome::kError;
    rec.error = err.what();
    rec.changes.clear();
    rec.journal.clear();
    rec.generation_after = state.generation;
  }
  if (sink_ && log_enabled_) sink_(rec);
  return rec;
}

AuditRecord Aef::apply_event(AciStore& store, const SyscallEvent& e) {
  AuditRecord rec;
  store.mutate_if([&](StoreImage& image, Journal& journal) {
    const uint64_t before = image.generation;
    rec = apply_event(image, e);
    for (const auto& l : rec.journal) journal.add(l);
    return image.generation != before;
  });
  return rec;
}

std::vector<AuditRecord> Aef::replay_trace(StoreImage& state,
                                           std::span<const SyscallEvent> trace) {
  std::vector<std::pair<std::shared_ptr<PolicyModule>, bool>> saved;
  for (const auto& name : adf_.module_names()) {
    if (auto m = adf_.module(name)) saved.emplace_back(m, m->enabled());
  }
  const bool saved_log = log_enabled_;
  std::vector<AuditRecord> log;
  log.reserve(trace.size());
  for (const auto& e : trace) log.push_back(apply_event(state, e));
  for (auto& [m, on] : saved) m->set_enabled(on);
  log_enabled_ = saved_log;
  return log;
}

ReplayResult replay_trace(Adf& adf, const StoreImage& initial,
                          std::span<const SyscallEvent> trace, AefOptions options) {
  ReplayResult out{{}, initial};
  Aef aef(adf, options);
  out.log = aef.replay_trace(out.final_state, trace);
  return out;
}

}  // namespace osr::aef

namespace osr::aef {

ProcessId login(Aef& aef, StoreImage& state, const UserId& user,
                const std::string& shell) {
  if (!state.users.contains(user)) {
    throw OsrError(ErrorCode::kNotFound, "no user '" + user.str() + "'", user.str());
  }
  StoreImage scratch = state;
  const ProcessId child = next_process_id(scratch);
  const std::vector<SyscallEvent> steps = {
      {0, scratch.system_process, "fork", {{"child", child.str()}}},
      {1, child, "execve", {{"path", "/bin/login"}}},
      {2, child, "setuid", {{"user", user.str()}}},
      {3, child, "execve", {{"path", shell}}},
  };
  for (const auto& step : steps) {
    AuditRecord rec = aef.apply_event(scratch, step);
    if (rec.outcome != Outcome::kAllowed) {
      throw OsrError(ErrorCode::kPermissionDenied,
                     "login of '" + user.str() + "' failed: " + to_jsonl(rec),
                     user.str());
    }
  }
  // One published step for the whole login.
  scratch.generation = state.generation + 1;
  state = std::move(scratch);
  return child;
}

ProcessId login(Aef& aef, AciStore& store, const UserId& user,
                const std::string& shell) {
  return store.mutate(
      [&](StoreImage& image, Journal&) { return login(aef, image, user, shell); });
}

}  // namespace osr::aef
