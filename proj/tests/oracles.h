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

// Brute-force reference evaluators. They read role records and principal
// role sets directly and never touch the cached effective permissions, the
// capability vector or the model's helper queries.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "osr/aci.h"
#include "osr/request.h"

namespace osr::testing {

inline std::optional<size_t> oracle_bit(const std::vector<std::string>& names,
                                        std::string_view name) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

// Roles whose permissions a process draws on: its active roles and, walking
// child edges backwards, every ancestor of them.
inline std::set<RoleId> oracle_role_closure(const StoreImage& img, const std::set<RoleId>& start) {
  std::set<RoleId> out = start;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [id, role] : img.roles) {
      if (out.contains(id)) continue;
      for (const auto& child : role.child_roles) {
        if (out.contains(child)) {
          out.insert(id);
          grew = true;
          break;
        }
      }
    }
  }
  return out;
}

inline bool oracle_role_has_ordinary(const RoleRecord& role, RightsCategory cat,
                                     const TypeId& type, size_t bit) {
  const auto& table = role.permissions.ordinary[static_cast<size_t>(cat)];
  auto it = table.find(type);
  if (it == table.end()) return false;
  return bit < it->second.width() && it->second.test(bit);
}

inline bool oracle_role_has_privilege(const RoleRecord& role, PrivilegeClass cls, size_t bit) {
  const auto& v = role.permissions.privileges[static_cast<size_t>(cls)];
  return bit < v.width() && v.test(bit);
}

inline std::set<TypeId> oracle_target_types(const StoreImage& img, const TargetRef& t) {
  switch (t.kind) {
    case TargetKind::kProcess:
      return img.processes.at(ProcessId{t.id}).rac_types;
    case TargetKind::kScd:
      return {TypeId{t.id}};
    case TargetKind::kNone:
      return {};
    default:
      return img.objects.at(ObjectId{t.id}).rac_types;
  }
}

inline RightsCategory oracle_category(TargetKind k) {
  switch (k) {
    case TargetKind::kFile:
    case TargetKind::kDir: return RightsCategory::kFd;
    case TargetKind::kDev: return RightsCategory::kDev;
    case TargetKind::kProcess: return RightsCategory::kProc;
    case TargetKind::kIpc: return RightsCategory::kIpc;
    default: return RightsCategory::kScd;
  }
}

// The right name checked for a request is the request name without "R_".
inline bool oracle_ordinary(const StoreImage& img, const ProcessId& pid, RequestType request,
                            const TargetRef& target) {
  const auto& proc = img.processes.at(pid);
  const RightsCategory cat = oracle_category(target.kind);
  std::string name(to_string(request));
  name = name.substr(2);
  auto bit = oracle_bit(img.registry.ordinary[static_cast<size_t>(cat)], name);
  if (!bit) return false;
  const auto types = oracle_target_types(img, target);
  if (types.empty()) return false;
  const auto roles = oracle_role_closure(img, proc.active_roles);
  for (const auto& t : types) {
    bool any = false;
    for (const auto& r : roles) {
      if (oracle_role_has_ordinary(img.roles.at(r), cat, t, *bit)) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

inline bool oracle_privilege(const StoreImage& img, const ProcessId& pid, PrivilegeClass cls,
                             std::string_view name) {
  auto bit = oracle_bit(img.registry.privileges[static_cast<size_t>(cls)], name);
  if (!bit) return false;
  for (const auto& r : oracle_role_closure(img, img.processes.at(pid).active_roles)) {
    if (oracle_role_has_privilege(img.roles.at(r), cls, *bit)) return true;
  }
  return false;
}

// Capability bit i is set iff some active role grants sysadm privilege i.
inline std::vector<bool> oracle_caps(const StoreImage& img, const ProcessId& pid) {
  const auto& names = img.registry.privileges[static_cast<size_t>(PrivilegeClass::kSys)];
  std::vector<bool> out(names.size(), false);
  for (size_t i = 0; i < names.size(); ++i) out[i] = oracle_privilege(img, pid, PrivilegeClass::kSys, names[i]);
  return out;
}

inline bool oracle_contains(const PermissionSet& big, const PermissionSet& small,
                            const RightsRegistry& reg) {
  for (auto c : kAllRightsCategories) {
    for (const auto& [type, bits] : small.ordinary[static_cast<size_t>(c)]) {
      for (size_t b = 0; b < bits.width(); ++b) {
        if (!bits.test(b)) continue;
        auto it = big.ordinary[static_cast<size_t>(c)].find(type);
        if (it == big.ordinary[static_cast<size_t>(c)].end() || !it->second.test(b)) return false;
      }
    }
  }
  for (auto c : kAllPrivilegeClasses) {
    for (size_t b = 0; b < reg.width(c); ++b) {
      const auto& s = small.privileges[static_cast<size_t>(c)];
      const auto& g = big.privileges[static_cast<size_t>(c)];
      const bool in_small = b < s.width() && s.test(b);
      const bool in_big = b < g.width() && g.test(b);
      if (in_small && !in_big) return false;
    }
  }
  return true;
}

// First violated role-model invariant, or nullopt.
inline std::optional<std::string> oracle_violation(const StoreImage& img) {
  auto conflicting = [&](const std::set<RoleId>& roles, bool dynamic) -> std::optional<std::string> {
    for (const auto& a : roles) {
      const auto& ra = img.roles.at(a);
      const auto& list = dynamic ? ra.dynamic_conflict_roles : ra.static_conflict_roles;
      for (const auto& b : roles) {
        if (a != b && list.contains(b)) return a.str() + "/" + b.str();
      }
    }
    return std::nullopt;
  };
  auto principal = [&](const std::string& who, const std::set<RoleId>& max,
                       const std::set<RoleId>& active) -> std::optional<std::string> {
    for (const auto& r : max) {
      if (!img.roles.contains(r)) return who + ": unknown role " + r.str();
    }
    if (!std::includes(max.begin(), max.end(), active.begin(), active.end())) {
      return who + ": active not within max";
    }
    for (const auto& r : max) {
      const auto above = oracle_role_closure(img, {r});
      for (const auto& other : max) {
        if (other != r && above.contains(other)) {
          return who + ": max holds " + other.str() + " with its descendant " + r.str();
        }
      }
    }
    if (auto p = conflicting(max, false)) return who + ": static SoD " + *p;
    if (auto p = conflicting(active, true)) return who + ": dynamic SoD " + *p;
    return std::nullopt;
  };
  for (const auto& [id, u] : img.users) {
    if (auto v = principal("user " + id.str(), u.max_roles, u.active_roles)) return v;
  }
  for (const auto& [id, p] : img.processes) {
    if (auto v = principal("process " + id.str(), p.max_roles, p.active_roles)) return v;
  }
  for (const auto& [id, r] : img.roles) {
    for (const auto& c : r.child_roles) {
      if (!img.roles.contains(c)) return "dangling child " + c.str();
      if (!oracle_contains(img.roles.at(c).permissions, r.permissions, img.registry)) {
        return "containment " + id.str() + "->" + c.str();
      }
    }
    for (const auto& o : r.static_conflict_roles) {
      if (!img.roles.contains(o) || !img.roles.at(o).static_conflict_roles.contains(id)) {
        return "static asymmetry " + id.str() + "/" + o.str();
      }
    }
    for (const auto& o : r.dynamic_conflict_roles) {
      if (!img.roles.contains(o) || !img.roles.at(o).dynamic_conflict_roles.contains(id)) {
        return "dynamic asymmetry " + id.str() + "/" + o.str();
      }
    }
  }
  // Acyclicity: repeatedly strip roles with no remaining children.
  std::set<RoleId> left;
  for (const auto& [id, r] : img.roles) left.insert(id);
  bool progress = true;
  while (!left.empty() && progress) {
    progress = false;
    for (auto it = left.begin(); it != left.end();) {
      bool leaf = true;
      for (const auto& c : img.roles.at(*it).child_roles) {
        if (left.contains(c)) leaf = false;
      }
      if (leaf) {
        it = left.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  if (!left.empty()) return "cycle through " + left.begin()->str();
  return std::nullopt;
}

}  // namespace osr::testing
