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

#include "osr/model.h"

#include <algorithm>
#include <deque>
#include <map>

#include "osr/capability.h"
#include "osr/error.h"

namespace osr::model {
namespace {

std::string pair_text(const std::pair<RoleId, RoleId>& p) {
  return p.first.str() + "," + p.second.str();
}

void require_roles_exist(const RoleTable& table, const RoleSet& roles) {
  for (const auto& r : roles) {
    if (!table.contains(r)) {
      throw OsrError(ErrorCode::kNotFound, "role '" + r.str() + "' not found",
                     r.str());
    }
  }
}

std::map<RoleId, RoleSet> parent_index(const RoleTable& table) {
  std::map<RoleId, RoleSet> parents;
  for (const auto& [id, rec] : table) {
    for (const auto& child : rec.child_roles) parents[child].insert(id);
  }
  return parents;
}

const RoleSet& conflicts_of(const RoleRecord& rec, ConflictKind kind) {
  return kind == ConflictKind::kStatic ? rec.static_conflict_roles
                                       : rec.dynamic_conflict_roles;
}

RoleSet& conflicts_of(RoleRecord& rec, ConflictKind kind) {
  return kind == ConflictKind::kStatic ? rec.static_conflict_roles
                                       : rec.dynamic_conflict_roles;
}

std::optional<std::pair<RoleId, RoleId>> find_conflict(const RoleTable& table,
                                                       const RoleSet& roles,
                                                       ConflictKind kind) {
  for (auto a = roles.begin(); a != roles.end(); ++a) {
    auto ra = table.find(*a);
    for (auto b = std::next(a); b != roles.end(); ++b) {
      auto rb = table.find(*b);
      bool hit = (ra != table.end() && conflicts_of(ra->second, kind).contains(*b)) ||
                 (rb != table.end() && conflicts_of(rb->second, kind).contains(*a));
      if (hit) return std::make_pair(*a, *b);
    }
  }
  return std::nullopt;
}

// Zero-width privilege vectors become zero vectors of registry width and
// all-zero table rows are dropped, so equal permissions compare equal.
void normalize_permissions(const RightsRegistry& registry, PermissionSet& p) {
  for (auto c : kAllPrivilegeClasses) {
    if (p.privilege(c).width() == 0) {
      p.privilege(c) = PermissionBitVector(registry.width(c));
    }
  }
  p.normalize();
}

void validate_permissions_shape(const RightsRegistry& registry,
                                const PermissionSet& p, const std::string& who) {
  for (auto c : kAllRightsCategories) {
    for (const auto& [type, vec] : p.table(c)) {
      if (!registry.valid_type_key(c, type)) {
        throw OsrError(ErrorCode::kDanglingReference,
                       who + ": unknown type '" + type.str() + "' in " +
                           std::string(role_attribute_name(c)),
                       type.str());
      }
      if (vec.width() != registry.width(c)) {
        throw OsrError(ErrorCode::kTypeMismatch,
                       who + ": " + std::string(role_attribute_name(c)) +
                           " vector width " + std::to_string(vec.width()) +
                           " != " + std::to_string(registry.width(c)),
                       who);
      }
    }
  }
  for (auto c : kAllPrivilegeClasses) {
    if (p.privilege(c).width() != registry.width(c)) {
      throw OsrError(ErrorCode::kTypeMismatch,
                     who + ": " + std::string(role_attribute_name(c)) +
                         " width " + std::to_string(p.privilege(c).width()) +
                         " != " + std::to_string(registry.width(c)),
                     who);
    }
  }
}

void check_containment_edges(const RoleTable& table, const RoleId& role) {
  const auto& rec = table.at(role);
  for (const auto& child : rec.child_roles) {
    if (!table.at(child).permissions.contains(rec.permissions)) {
      throw OsrError(ErrorCode::kContainmentViolated,
                     "child '" + child.str() + "' lacks permissions of parent '" +
                         role.str() + "'",
                     role.str());
    }
  }
}

void check_parents_contained(const RoleTable& table, const RoleId& role) {
  const auto& rec = table.at(role);
  for (const auto& [pid, parent] : table) {
    if (parent.child_roles.contains(role) &&
        !rec.permissions.contains(parent.permissions)) {
      throw OsrError(ErrorCode::kContainmentViolated,
                     "role '" + role.str() + "' lacks permissions of parent '" +
                         pid.str() + "'",
                     role.str());
    }
  }
}

RoleSet& max_of(StoreImage& image, const Principal& p) {
  if (const auto* u = std::get_if<UserId>(&p)) return image.user(*u).max_roles;
  return image.process(std::get<ProcessId>(p)).max_roles;
}

RoleSet& active_of(StoreImage& image, const Principal& p) {
  if (const auto* u = std::get_if<UserId>(&p)) return image.user(*u).active_roles;
  return image.process(std::get<ProcessId>(p)).active_roles;
}

void refresh_process(StoreImage& image, const ProcessId& pid,
                     std::string_view trigger, Journal* journal) {
  auto& proc = image.process(pid);
  proc.effective = merge_effective_permissions(image.roles, image.registry,
                                               proc.active_roles);
  capability::recompute_effective_caps(image, pid, trigger, journal);
}

void refresh_principal(StoreImage& image, const Principal& p,
                       std::string_view trigger, Journal* journal) {
  if (const auto* pid = std::get_if<ProcessId>(&p)) {
    refresh_process(image, *pid, trigger, journal);
  }
}

void check_kernel_only(const StoreImage& image, const Principal& p,
                       const RoleSet& roles) {
  for (const auto& r : roles) {
    if (!image.role(r).kernel_only) continue;
    const auto* pid = std::get_if<ProcessId>(&p);
    if (pid == nullptr || *pid != image.system_process) {
      throw OsrError(ErrorCode::kTrustedRoleRestricted,
                     "role '" + r.str() + "' can only be granted to the system "
                     "process, not " + describe(p),
                     r.str());
    }
  }
}

// Re-applies parent elimination after the hierarchy changed.
void reduce_all_principals(StoreImage& image) {
  auto reduce = [&](RoleSet& max, RoleSet& active) {
    max = reduce_redundant_parents(image.roles, max);
    std::erase_if(active, [&](const RoleId& r) { return !max.contains(r); });
  };
  for (auto& [id, u] : image.users) reduce(u.max_roles, u.active_roles);
  for (auto& [id, p] : image.processes) reduce(p.max_roles, p.active_roles);
}

void check_principals_conflicts(const StoreImage& image, ConflictKind kind) {
  auto check = [&](const RoleSet& set, const std::string& who) {
    auto hit = find_conflict(image.roles, set, kind);
    if (!hit) return;
    throw OsrError(kind == ConflictKind::kStatic ? ErrorCode::kStaticConflict
                                                 : ErrorCode::kDynamicConflict,
                   who + " would hold conflicting roles " + pair_text(*hit),
                   pair_text(*hit));
  };
  for (const auto& [id, u] : image.users) {
    check(kind == ConflictKind::kStatic ? u.max_roles : u.active_roles,
          "user " + id.str());
  }
  for (const auto& [id, p] : image.processes) {
    check(kind == ConflictKind::kStatic ? p.max_roles : p.active_roles,
          "process " + id.str());
  }
  if (kind == ConflictKind::kStatic) {
    for (const auto& [id, o] : image.objects) {
      check(o.exec_file_roles, "executable " + id.str());
    }
  }
}

}  // namespace

RoleSet inherited_closure(const RoleTable& table, const RoleSet& roles) {
  require_roles_exist(table, roles);
  const auto parents = parent_index(table);
  RoleSet out = roles;
  std::deque<RoleId> queue(roles.begin(), roles.end());
  while (!queue.empty()) {
    RoleId cur = queue.front();
    queue.pop_front();
    auto it = parents.find(cur);
    if (it == parents.end()) continue;
    for (const auto& p : it->second) {
      if (out.insert(p).second) queue.push_back(p);
    }
  }
  return out;
}

RoleSet descendants(const RoleTable& table, const RoleId& role) {
  RoleSet out;
  std::deque<RoleId> queue{role};
  while (!queue.empty()) {
    RoleId cur = queue.front();
    queue.pop_front();
    auto it = table.find(cur);
    if (it == table.end()) continue;
    for (const auto& c : it->second.child_roles) {
      if (out.insert(c).second) queue.push_back(c);
    }
  }
  return out;
}

RoleSet reduce_redundant_parents(const RoleTable& table, const RoleSet& roles) {
  require_roles_exist(table, roles);
  RoleSet out;
  for (const auto& r : roles) {
    const auto below = descendants(table, r);
    bool redundant = std::any_of(roles.begin(), roles.end(), [&](const RoleId& m) {
      return m != r && below.contains(m);
    });
    if (!redundant) out.insert(r);
  }
  return out;
}

std::optional<std::pair<RoleId, RoleId>> find_static_conflict(
    const RoleTable& table, const RoleSet& roles) {
  return find_conflict(table, roles, ConflictKind::kStatic);
}

std::optional<std::pair<RoleId, RoleId>> find_dynamic_conflict(
    const RoleTable& table, const RoleSet& roles) {
  return find_conflict(table, roles, ConflictKind::kDynamic);
}

std::optional<std::pair<RoleId, RoleId>> find_static_conflict_between(
    const RoleTable& table, const RoleSet& lhs, const RoleSet& rhs) {
  for (const auto& a : lhs) {
    auto ra = table.find(a);
    for (const auto& b : rhs) {
      auto rb = table.find(b);
      if ((ra != table.end() && ra->second.static_conflict_roles.contains(b)) ||
          (rb != table.end() && rb->second.static_conflict_roles.contains(a))) {
        return std::make_pair(a, b);
      }
    }
  }
  return std::nullopt;
}

PermissionSet merge_effective_permissions(const RoleTable& table,
                                          const RightsRegistry& registry,
                                          const RoleSet& roles) {
  require_roles_exist(table, roles);
  PermissionSet out = PermissionSet::empty(registry);
  for (const auto& r : roles) out.merge(table.at(r).permissions);
  return out;
}

bool has_cycle(const RoleTable& table) {
  enum class Mark { kNew, kActive, kDone };
  std::map<RoleId, Mark> mark;
  for (const auto& [id, rec] : table) mark[id] = Mark::kNew;

  // Iterative DFS: stack of (node, next-child iterator position).
  for (const auto& [start, rec] : table) {
    if (mark[start] != Mark::kNew) continue;
    std::vector<std::pair<RoleId, RoleSet::const_iterator>> stack;
    mark[start] = Mark::kActive;
    stack.emplace_back(start, rec.child_roles.begin());
    while (!stack.empty()) {
      auto& [node, it] = stack.back();
      const auto& children = table.at(node).child_roles;
      if (it == children.end()) {
        mark[node] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      RoleId child = *it++;
      if (!table.contains(child)) continue;
      if (mark[child] == Mark::kActive) return true;
      if (mark[child] == Mark::kNew) {
        mark[child] = Mark::kActive;
        stack.emplace_back(child, table.at(child).child_roles.begin());
      }
    }
  }
  return false;
}

void validate_record_shape(const RightsRegistry& registry,
                           const RoleRecord& record) {
  if (record.id.empty()) {
    throw OsrError(ErrorCode::kInvariantViolation, "role id must not be empty");
  }
  if (record.child_roles.contains(record.id)) {
    throw OsrError(ErrorCode::kCycleDetected,
                   "role '" + record.id.str() + "' lists itself as a child",
                   record.id.str());
  }
  if (record.static_conflict_roles.contains(record.id) ||
      record.dynamic_conflict_roles.contains(record.id)) {
    throw OsrError(ErrorCode::kInvariantViolation,
                   "role '" + record.id.str() + "' conflicts with itself",
                   record.id.str());
  }
  validate_permissions_shape(registry, record.permissions,
                             "role " + record.id.str());
}

void add_roles(StoreImage& image, std::vector<RoleRecord> records,
               Journal* journal) {
  RoleTable table = image.roles;
  std::vector<RoleId> added;
  for (auto& rec : records) {
    normalize_permissions(image.registry, rec.permissions);
    validate_record_shape(image.registry, rec);
    if (table.contains(rec.id)) {
      throw OsrError(ErrorCode::kDuplicateId,
                     "role '" + rec.id.str() + "' already exists", rec.id.str());
    }
    added.push_back(rec.id);
    table.emplace(rec.id, std::move(rec));
  }
  for (const auto& id : added) {
    const auto& rec = table.at(id);
    for (const auto* set : {&rec.child_roles, &rec.static_conflict_roles,
                            &rec.dynamic_conflict_roles}) {
      for (const auto& ref : *set) {
        if (!table.contains(ref)) {
          throw OsrError(ErrorCode::kDanglingReference,
                         "role '" + id.str() + "' references unknown role '" +
                             ref.str() + "'",
                         ref.str());
        }
      }
    }
    for (auto kind : {ConflictKind::kStatic, ConflictKind::kDynamic}) {
      for (const auto& partner : conflicts_of(rec, kind)) {
        if (!conflicts_of(table.at(partner), kind).contains(id)) {
          throw OsrError(ErrorCode::kConflictAsymmetry,
                         "role '" + id.str() + "' lists '" + partner.str() +
                             "' as conflicting but not vice versa",
                         id.str());
        }
      }
    }
  }
  if (has_cycle(table)) {
    throw OsrError(ErrorCode::kCycleDetected,
                   "role hierarchy would contain a cycle",
                   added.empty() ? std::string{} : added.front().str());
  }
  for (const auto& id : added) check_containment_edges(table, id);
  image.roles = std::move(table);
  (void)journal;
}

RoleId add_role(StoreImage& image, RoleRecord record, Journal* journal) {
  RoleId id = record.id;
  std::vector<RoleRecord> batch;
  batch.push_back(std::move(record));
  add_roles(image, std::move(batch), journal);
  return id;
}

void delete_role(StoreImage& image, const RoleId& role, Journal* journal) {
  const auto& rec = image.role(role);
  if (!rec.mutable_permissions) {
    throw OsrError(ErrorCode::kBuiltinRoleImmutable,
                   "built-in role '" + role.str() + "' cannot be deleted",
                   role.str());
  }
  image.roles.erase(role);
  for (auto& [id, r] : image.roles) {
    r.child_roles.erase(role);
    r.static_conflict_roles.erase(role);
    r.dynamic_conflict_roles.erase(role);
  }
  for (auto& [id, u] : image.users) {
    u.max_roles.erase(role);
    u.active_roles.erase(role);
  }
  for (auto& [id, p] : image.processes) {
    p.max_roles.erase(role);
    p.active_roles.erase(role);
  }
  for (auto& [id, o] : image.objects) o.exec_file_roles.erase(role);
  refresh_all_processes(image, "delete_role " + role.str(), journal);
}

void set_child_roles(StoreImage& image, const RoleId& role, RoleSet children,
                     Journal* journal) {
  image.role(role);
  require_roles_exist(image.roles, children);
  if (children.contains(role)) {
    throw OsrError(ErrorCode::kCycleDetected,
                   "role '" + role.str() + "' cannot be its own child",
                   role.str());
  }
  RoleTable table = image.roles;
  table.at(role).child_roles = std::move(children);
  if (has_cycle(table)) {
    throw OsrError(ErrorCode::kCycleDetected,
                   "children of '" + role.str() + "' would close a cycle",
                   role.str());
  }
  check_containment_edges(table, role);
  image.roles = std::move(table);
  reduce_all_principals(image);
  refresh_all_processes(image, "set_child_roles " + role.str(), journal);
}

void set_role_permissions(StoreImage& image, const RoleId& role,
                          PermissionSet permissions, Journal* journal) {
  auto& rec = image.role(role);
  if (!rec.mutable_permissions) {
    throw OsrError(ErrorCode::kBuiltinRoleImmutable,
                   "permissions of built-in role '" + role.str() +
                       "' cannot be modified",
                   role.str());
  }
  normalize_permissions(image.registry, permissions);
  validate_permissions_shape(image.registry, permissions, "role " + role.str());
  rec.permissions = std::move(permissions);
  check_containment_edges(image.roles, role);
  check_parents_contained(image.roles, role);
  refresh_all_processes(image, "set_permissions " + role.str(), journal);
}

void set_conflict_roles(StoreImage& image, const RoleId& role,
                        ConflictKind kind, RoleSet partners, Journal* journal) {
  image.role(role);
  require_roles_exist(image.roles, partners);
  if (partners.contains(role)) {
    throw OsrError(ErrorCode::kInvariantViolation,
                   "role '" + role.str() + "' cannot conflict with itself",
                   role.str());
  }
  const RoleSet old = conflicts_of(image.role(role), kind);
  for (const auto& r : old) {
    if (!partners.contains(r)) conflicts_of(image.role(r), kind).erase(role);
  }
  for (const auto& r : partners) conflicts_of(image.role(r), kind).insert(role);
  conflicts_of(image.role(role), kind) = std::move(partners);
  check_principals_conflicts(image, kind);
  (void)journal;
}

void assign_max_roles(StoreImage& image, const Principal& principal,
                      RoleSet roles, Journal* journal) {
  max_of(image, principal);
  require_roles_exist(image.roles, roles);
  check_kernel_only(image, principal, roles);
  if (auto hit = find_static_conflict(image.roles, roles)) {
    throw OsrError(ErrorCode::kStaticConflict,
                   describe(principal) + ": roles " + pair_text(*hit) +
                       " are in static conflict",
                   pair_text(*hit));
  }
  RoleSet reduced = reduce_redundant_parents(image.roles, roles);
  auto& active = active_of(image, principal);
  std::erase_if(active, [&](const RoleId& r) { return !reduced.contains(r); });
  max_of(image, principal) = std::move(reduced);
  refresh_principal(image, principal, "assign_max_roles", journal);
}

void activate_roles(StoreImage& image, const Principal& principal,
                    RoleSet roles, Journal* journal) {
  const auto& max = max_of(image, principal);
  require_roles_exist(image.roles, roles);
  for (const auto& r : roles) {
    if (!max.contains(r)) {
      throw OsrError(ErrorCode::kNotInMaxRoles,
                     describe(principal) + ": role '" + r.str() +
                         "' is not in its maximum role set",
                     r.str());
    }
  }
  if (auto hit = find_dynamic_conflict(image.roles, roles)) {
    throw OsrError(ErrorCode::kDynamicConflict,
                   describe(principal) + ": roles " + pair_text(*hit) +
                       " are in dynamic conflict",
                   pair_text(*hit));
  }
  active_of(image, principal) = std::move(roles);
  refresh_principal(image, principal, "activate_roles", journal);
}

void install_process_roles(StoreImage& image, const ProcessId& pid,
                           RoleSet max_roles, RoleSet active_roles,
                           std::string_view trigger, Journal* journal) {
  auto& proc = image.process(pid);
  require_roles_exist(image.roles, max_roles);
  if (auto hit = find_static_conflict(image.roles, max_roles)) {
    throw OsrError(ErrorCode::kStaticConflict,
                   "process " + pid.str() + ": roles " + pair_text(*hit) +
                       " are in static conflict",
                   pair_text(*hit));
  }
  for (const auto& r : active_roles) {
    if (!max_roles.contains(r)) {
      throw OsrError(ErrorCode::kNotInMaxRoles,
                     "process " + pid.str() + ": active role '" + r.str() +
                         "' outside maximum set",
                     r.str());
    }
  }
  if (auto hit = find_dynamic_conflict(image.roles, active_roles)) {
    throw OsrError(ErrorCode::kDynamicConflict,
                   "process " + pid.str() + ": roles " + pair_text(*hit) +
                       " are in dynamic conflict",
                   pair_text(*hit));
  }
  // Same redundancy rule as assign_max_roles: parents of other members are
  // dropped from the maximum set and from the active set with them.
  RoleSet reduced = reduce_redundant_parents(image.roles, max_roles);
  std::erase_if(active_roles, [&](const RoleId& r) { return !reduced.contains(r); });
  proc.max_roles = std::move(reduced);
  proc.active_roles = std::move(active_roles);
  refresh_process(image, pid, trigger, journal);
}

void refresh_all_processes(StoreImage& image, std::string_view trigger,
                           Journal* journal) {
  for (auto& [pid, proc] : image.processes) {
    refresh_process(image, pid, trigger, journal);
  }
}

void validate_image(const StoreImage& image) {
  const auto& reg = image.registry;
  reg.validate();
  const auto& table = image.roles;

  for (const auto& [id, rec] : table) {
    if (rec.id != id) {
      throw OsrError(ErrorCode::kInvariantViolation,
                     "role keyed as '" + id.str() + "' carries id '" +
                         rec.id.str() + "'",
                     id.str());
    }
    validate_record_shape(reg, rec);
    for (const auto* set : {&rec.child_roles, &rec.static_conflict_roles,
                            &rec.dynamic_conflict_roles}) {
      for (const auto& ref : *set) {
        if (!table.contains(ref)) {
          throw OsrError(ErrorCode::kDanglingReference,
                         "role '" + id.str() + "' references unknown role '" +
                             ref.str() + "'",
                         ref.str());
        }
      }
    }
    for (auto kind : {ConflictKind::kStatic, ConflictKind::kDynamic}) {
      for (const auto& partner : conflicts_of(rec, kind)) {
        if (!conflicts_of(table.at(partner), kind).contains(id)) {
          throw OsrError(ErrorCode::kConflictAsymmetry,
                         "conflict between '" + id.str() + "' and '" +
                             partner.str() + "' is not symmetric",
                         id.str());
        }
      }
    }
  }
  if (has_cycle(table)) {
    throw OsrError(ErrorCode::kCycleDetected, "role hierarchy contains a cycle");
  }
  for (const auto& [id, rec] : table) check_containment_edges(table, id);

  auto check_sets = [&](const RoleSet& max, const RoleSet& active,
                        const std::string& who) {
    require_roles_exist(table, max);
    require_roles_exist(table, active);
    for (const auto& r : active) {
      if (!max.contains(r)) {
        throw OsrError(ErrorCode::kNotInMaxRoles,
                       who + ": active role '" + r.str() + "' not in max set",
                       r.str());
      }
    }
    if (auto hit = find_static_conflict(table, max)) {
      throw OsrError(ErrorCode::kStaticConflict,
                     who + ": max roles " + pair_text(*hit) + " conflict",
                     pair_text(*hit));
    }
    if (auto hit = find_dynamic_conflict(table, active)) {
      throw OsrError(ErrorCode::kDynamicConflict,
                     who + ": active roles " + pair_text(*hit) + " conflict",
                     pair_text(*hit));
    }
    if (reduce_redundant_parents(table, max) != max) {
      throw OsrError(ErrorCode::kInvariantViolation,
                     who + ": max roles hold a role together with its ancestor",
                     who);
    }
  };

  for (const auto& [id, u] : image.users) {
    check_sets(u.max_roles, u.active_roles, "user " + id.str());
    for (const auto& r : u.max_roles) {
      if (table.at(r).kernel_only) {
        throw OsrError(ErrorCode::kTrustedRoleRestricted,
                       "user " + id.str() + " holds kernel-only role " + r.str(),
                       r.str());
      }
    }
    if (!u.default_object_type.empty() &&
        !reg.has_object_type(u.default_object_type)) {
      throw OsrError(ErrorCode::kDanglingReference,
                     "user " + id.str() + ": unknown default type '" +
                         u.default_object_type.str() + "'",
                     u.default_object_type.str());
    }
    for (const auto& t : u.process_types_override) {
      if (!reg.has_object_type(t)) {
        throw OsrError(ErrorCode::kDanglingReference,
                       "user " + id.str() + ": unknown type '" + t.str() + "'",
                       t.str());
      }
    }
  }

  for (const auto& [id, p] : image.processes) {
    check_sets(p.max_roles, p.active_roles, "process " + id.str());
    if (!image.users.contains(p.owner)) {
      throw OsrError(ErrorCode::kDanglingReference,
                     "process " + id.str() + ": unknown owner '" +
                         p.owner.str() + "'",
                     p.owner.str());
    }
    if (merge_effective_permissions(table, reg, p.active_roles) != p.effective) {
      throw OsrError(ErrorCode::kInvariantViolation,
                     "process " + id.str() + ": stale effective permissions",
                     id.str());
    }
    if (capability::caps_for_roles(image, p.active_roles) != p.effective_caps) {
      throw OsrError(ErrorCode::kInvariantViolation,
                     "process " + id.str() + ": stale capability vector",
                     id.str());
    }
  }

  for (const auto& [id, o] : image.objects) {
    const std::string who = "object " + id.str();
    if (o.id != id) {
      throw OsrError(ErrorCode::kInvariantViolation,
                     who + " carries id '" + o.id.str() + "'", id.str());
    }
    if (o.rac_types.empty()) {
      throw OsrError(ErrorCode::kInvariantViolation, who + " has no types",
                     id.str());
    }
    for (const auto& t : o.rac_types) {
      if (!reg.has_object_type(t)) {
        throw OsrError(ErrorCode::kDanglingReference,
                       who + ": unknown type '" + t.str() + "'", t.str());
      }
    }
    if ((o.executable || !o.exec_file_roles.empty()) &&
        o.kind != ObjectKind::kFile) {
      throw OsrError(ErrorCode::kInvariantViolation,
                     who + ": executable roles are only valid on files",
                     id.str());
    }
    require_roles_exist(table, o.exec_file_roles);
    for (const auto& r : o.exec_file_roles) {
      if (table.at(r).kernel_only) {
        throw OsrError(ErrorCode::kTrustedRoleRestricted,
                       who + " carries kernel-only role " + r.str(), r.str());
      }
    }
    if (auto hit = find_static_conflict(table, o.exec_file_roles)) {
      throw OsrError(ErrorCode::kStaticConflict,
                     who + ": roles " + pair_text(*hit) + " conflict",
                     pair_text(*hit));
    }
  }
}

}  // namespace osr::model
