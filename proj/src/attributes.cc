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

#include "osr/attributes.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "osr/error.h"
#include "osr/model.h"

namespace osr {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Accepts the historical spelling of the IPC rights list.
std::string canonical_attr(std::string_view name) {
  std::string n = lower(name);
  if (n == "lpc_right_vectors_array") return "ipc_right_vectors_array";
  return n;
}

[[noreturn]] void unknown_attr(const EntityRef& e, std::string_view name,
                               std::string_view why = "") {
  std::string msg = "attribute '" + std::string(name) + "' is not defined for " +
                    std::string(to_string(e.kind)) + " '" + e.id + "'";
  if (!why.empty()) msg += " (" + std::string(why) + ")";
  throw OsrError(ErrorCode::kUnknownAttribute, msg, std::string(name));
}

template <typename T>
const T& expect(const AttrValue& v, std::string_view name) {
  if (const auto* p = std::get_if<T>(&v)) return *p;
  throw OsrError(ErrorCode::kTypeMismatch,
                 "wrong value type for attribute '" + std::string(name) + "'",
                 std::string(name));
}

std::optional<RightsCategory> rights_attr(std::string_view n) {
  for (auto c : kAllRightsCategories) {
    if (role_attribute_name(c) == n) return c;
  }
  return std::nullopt;
}

std::optional<PrivilegeClass> privilege_attr(std::string_view n) {
  for (auto c : kAllPrivilegeClasses) {
    if (role_attribute_name(c) == n) return c;
  }
  return std::nullopt;
}

TypeSet checked_types(const StoreImage& image, const TokenSet& tokens,
                      bool allow_empty, std::string_view name) {
  if (tokens.empty() && !allow_empty) {
    throw OsrError(ErrorCode::kInvariantViolation,
                   "attribute '" + std::string(name) + "' must not be empty",
                   std::string(name));
  }
  TypeSet out;
  for (const auto& t : tokens) {
    if (!image.registry.has_object_type(TypeId{t})) {
      throw OsrError(ErrorCode::kNotFound, "type '" + t + "' is not declared", t);
    }
    out.emplace(t);
  }
  return out;
}

bool object_attr_valid(const ObjectAci& o, std::string_view n) {
  if (n == "rac_types" || n == "kind" || n == "device_id") return true;
  if (n == "exec_file_roles" || n == "executable") return o.kind == ObjectKind::kFile;
  return false;
}

}  // namespace

std::string_view to_string(EntityKind k) {
  switch (k) {
    case EntityKind::kRole: return "role";
    case EntityKind::kUser: return "user";
    case EntityKind::kProcess: return "process";
    case EntityKind::kObject: return "object";
  }
  return "?";
}

std::optional<EntityKind> parse_entity_kind(std::string_view s) {
  for (auto k : {EntityKind::kRole, EntityKind::kUser, EntityKind::kProcess,
                 EntityKind::kObject}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string describe(const AttrValue& v) {
  struct Visitor {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const TokenSet& s) const {
      std::string out = "{";
      for (const auto& t : s) {
        if (out.size() > 1) out += ",";
        out += t;
      }
      return out + "}";
    }
    std::string operator()(const PermissionBitVector& b) const {
      return b.to_string();
    }
    std::string operator()(const RightsTable& t) const {
      std::string out = "{";
      for (const auto& [type, vec] : t) {
        if (out.size() > 1) out += ",";
        out += type.str() + ":" + vec.to_string();
      }
      return out + "}";
    }
  };
  return std::visit(Visitor{}, v);
}

namespace {

std::string_view strip_braces(std::string_view t) {
  if (t.size() >= 2 && t.front() == '{' && t.back() == '}') {
    return t.substr(1, t.size() - 2);
  }
  return t;
}

std::vector<std::string> split(std::string_view t, char sep) {
  std::vector<std::string> out;
  if (t.empty()) return out;
  size_t pos = 0;
  for (;;) {
    size_t next = t.find(sep, pos);
    out.emplace_back(t.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view text, std::string_view want) {
  throw OsrError(ErrorCode::kTypeMismatch,
                 "cannot read '" + std::string(text) + "' as " + std::string(want),
                 std::string(text));
}

}  // namespace

AttrValue parse_attr_value(const AttrValue& like, std::string_view text) {
  if (std::holds_alternative<bool>(like)) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    bad_value(text, "boolean");
  }
  if (std::holds_alternative<std::string>(like)) return std::string(text);
  if (std::holds_alternative<PermissionBitVector>(like)) {
    return PermissionBitVector::from_string(text);
  }
  if (std::holds_alternative<TokenSet>(like)) {
    TokenSet out;
    for (auto& t : split(strip_braces(text), ',')) {
      if (t.empty()) bad_value(text, "token set");
      out.insert(std::move(t));
    }
    return out;
  }
  RightsTable table;
  for (const auto& entry : split(strip_braces(text), ',')) {
    auto colon = entry.find(':');
    if (colon == std::string::npos || colon == 0) bad_value(text, "rights table");
    table[TypeId{entry.substr(0, colon)}] =
        PermissionBitVector::from_string(entry.substr(colon + 1));
  }
  return table;
}

AttrValue get_attr(const StoreImage& image, const EntityRef& entity,
                   std::string_view attr_name) {
  const std::string n = canonical_attr(attr_name);
  switch (entity.kind) {
    case EntityKind::kRole: {
      const auto& r = image.role(RoleId{entity.id});
      if (n == "name") return r.name;
      if (n == "child_roles") return to_strings(r.child_roles);
      if (n == "static_conflict_roles") return to_strings(r.static_conflict_roles);
      if (n == "dynamic_conflict_roles") return to_strings(r.dynamic_conflict_roles);
      if (n == "mutable_permissions") return r.mutable_permissions;
      if (n == "kernel_only") return r.kernel_only;
      if (auto c = rights_attr(n)) return r.permissions.table(*c);
      if (auto c = privilege_attr(n)) return r.permissions.privilege(*c);
      break;
    }
    case EntityKind::kUser: {
      const auto& u = image.user(UserId{entity.id});
      if (n == "max_roles") return to_strings(u.max_roles);
      if (n == "active_roles") return to_strings(u.active_roles);
      if (n == "default_object_type") return u.default_object_type.str();
      if (n == "process_types_override") return to_strings(u.process_types_override);
      break;
    }
    case EntityKind::kProcess: {
      const auto& p = image.process(ProcessId{entity.id});
      if (n == "rac_types") return to_strings(p.rac_types);
      if (n == "max_roles") return to_strings(p.max_roles);
      if (n == "active_roles") return to_strings(p.active_roles);
      if (n == "owner_user") return p.owner.str();
      if (n == "exec_file") return p.exec_file ? p.exec_file->str() : std::string{};
      if (n == "effective_caps") return p.effective_caps;
      break;
    }
    case EntityKind::kObject: {
      const auto& o = image.object(ObjectId{entity.id});
      if (!object_attr_valid(o, n)) {
        unknown_attr(entity, attr_name, "kind " + std::string(to_string(o.kind)));
      }
      if (n == "rac_types") return to_strings(o.rac_types);
      if (n == "kind") return std::string(to_string(o.kind));
      if (n == "device_id") return o.device_id;
      if (n == "exec_file_roles") return to_strings(o.exec_file_roles);
      if (n == "executable") return o.executable;
      break;
    }
  }
  unknown_attr(entity, attr_name);
}

void set_attr(StoreImage& image, const EntityRef& entity,
              std::string_view attr_name, const AttrValue& value,
              Journal* journal) {
  const std::string n = canonical_attr(attr_name);
  switch (entity.kind) {
    case EntityKind::kRole: {
      const RoleId id{entity.id};
      auto& r = image.role(id);
      if (n == "name") {
        r.name = expect<std::string>(value, n);
        return;
      }
      if (n == "child_roles") {
        model::set_child_roles(image, id,
                               from_strings<RoleId>(expect<TokenSet>(value, n)),
                               journal);
        return;
      }
      if (n == "static_conflict_roles" || n == "dynamic_conflict_roles") {
        auto kind = n.starts_with("static") ? model::ConflictKind::kStatic
                                            : model::ConflictKind::kDynamic;
        model::set_conflict_roles(
            image, id, kind, from_strings<RoleId>(expect<TokenSet>(value, n)),
            journal);
        return;
      }
      if (auto c = rights_attr(n)) {
        PermissionSet p = r.permissions;
        p.table(*c) = expect<RightsTable>(value, n);
        model::set_role_permissions(image, id, std::move(p), journal);
        return;
      }
      if (auto c = privilege_attr(n)) {
        PermissionSet p = r.permissions;
        p.privilege(*c) = expect<PermissionBitVector>(value, n);
        model::set_role_permissions(image, id, std::move(p), journal);
        return;
      }
      if (n == "mutable_permissions" || n == "kernel_only") {
        unknown_attr(entity, attr_name, "read-only");
      }
      break;
    }
    case EntityKind::kUser: {
      const UserId id{entity.id};
      auto& u = image.user(id);
      if (n == "max_roles") {
        model::assign_max_roles(image, id,
                                from_strings<RoleId>(expect<TokenSet>(value, n)),
                                journal);
        return;
      }
      if (n == "active_roles") {
        model::activate_roles(image, id,
                              from_strings<RoleId>(expect<TokenSet>(value, n)),
                              journal);
        return;
      }
      if (n == "default_object_type") {
        const auto& t = expect<std::string>(value, n);
        u.default_object_type = *checked_types(image, {t}, false, n).begin();
        return;
      }
      if (n == "process_types_override") {
        u.process_types_override =
            checked_types(image, expect<TokenSet>(value, n), true, n);
        return;
      }
      break;
    }
    case EntityKind::kProcess: {
      const ProcessId id{entity.id};
      auto& p = image.process(id);
      if (n == "rac_types") {
        p.rac_types = checked_types(image, expect<TokenSet>(value, n), false, n);
        return;
      }
      if (n == "max_roles") {
        model::assign_max_roles(image, id,
                                from_strings<RoleId>(expect<TokenSet>(value, n)),
                                journal);
        return;
      }
      if (n == "active_roles") {
        model::activate_roles(image, id,
                              from_strings<RoleId>(expect<TokenSet>(value, n)),
                              journal);
        return;
      }
      if (n == "owner_user" || n == "exec_file" || n == "effective_caps") {
        unknown_attr(entity, attr_name, "read-only");
      }
      break;
    }
    case EntityKind::kObject: {
      auto& o = image.object(ObjectId{entity.id});
      if (!object_attr_valid(o, n)) {
        unknown_attr(entity, attr_name, "kind " + std::string(to_string(o.kind)));
      }
      if (n == "rac_types") {
        o.rac_types = checked_types(image, expect<TokenSet>(value, n), false, n);
        return;
      }
      if (n == "executable") {
        o.executable = expect<bool>(value, n);
        return;
      }
      if (n == "exec_file_roles") {
        RoleSet roles = from_strings<RoleId>(expect<TokenSet>(value, n));
        for (const auto& r : roles) {
          if (image.role(r).kernel_only) {
            throw OsrError(ErrorCode::kTrustedRoleRestricted,
                           "kernel-only role '" + r.str() +
                               "' cannot be attached to an executable",
                           r.str());
          }
        }
        if (auto hit = model::find_static_conflict(image.roles, roles)) {
          throw OsrError(ErrorCode::kStaticConflict,
                         "executable roles " + hit->first.str() + "," +
                             hit->second.str() + " conflict",
                         hit->first.str() + "," + hit->second.str());
        }
        o.exec_file_roles = std::move(roles);
        return;
      }
      unknown_attr(entity, attr_name, "read-only");
    }
  }
  unknown_attr(entity, attr_name);
}

std::vector<std::string> attribute_names(const StoreImage& image,
                                         const EntityRef& entity) {
  switch (entity.kind) {
    case EntityKind::kRole: {
      image.role(RoleId{entity.id});
      std::vector<std::string> out = {"name", "child_roles",
                                      "static_conflict_roles",
                                      "dynamic_conflict_roles"};
      for (auto c : kAllRightsCategories) out.emplace_back(role_attribute_name(c));
      for (auto c : kAllPrivilegeClasses) out.emplace_back(role_attribute_name(c));
      out.emplace_back("mutable_permissions");
      out.emplace_back("kernel_only");
      return out;
    }
    case EntityKind::kUser:
      image.user(UserId{entity.id});
      return {"max_roles", "active_roles", "default_object_type",
              "process_types_override"};
    case EntityKind::kProcess:
      image.process(ProcessId{entity.id});
      return {"rac_types", "max_roles", "active_roles", "owner_user",
              "exec_file", "effective_caps"};
    case EntityKind::kObject: {
      const auto& o = image.object(ObjectId{entity.id});
      if (o.kind == ObjectKind::kFile) {
        return {"rac_types", "kind", "device_id", "executable", "exec_file_roles"};
      }
      return {"rac_types", "kind", "device_id"};
    }
  }
  return {};
}

}  // namespace osr
