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

// Seeded generators for property tests: small random policies, random model
// mutations and random syscall traces.

#include <random>
#include <string>
#include <vector>

#include "osr/aef.h"
#include "osr/error.h"
#include "osr/model.h"

namespace osr::testing {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

inline size_t pick(Rng& rng, size_t n) {
  return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
}

template <typename C>
const typename C::value_type& pick_from(Rng& rng, const C& c) {
  auto it = c.begin();
  std::advance(it, pick(rng, c.size()));
  return *it;
}

inline PermissionBitVector random_bits(Rng& rng, size_t width, double density) {
  PermissionBitVector v(width);
  for (size_t i = 0; i < width; ++i) {
    if (coin(rng, density)) v.set(i);
  }
  return v;
}

inline PermissionSet random_permissions(Rng& rng, const RightsRegistry& reg, double density) {
  PermissionSet p = PermissionSet::empty(reg);
  for (auto c : kAllRightsCategories) {
    for (const auto& t : reg.type_keys(c)) {
      if (coin(rng, 0.6)) p.table(c)[t] = random_bits(rng, reg.width(c), density);
    }
  }
  for (auto c : kAllPrivilegeClasses) p.privilege(c) = random_bits(rng, reg.width(c), density);
  p.normalize();
  return p;
}

inline RoleSet random_subset(Rng& rng, const RoleSet& from, double p) {
  RoleSet out;
  for (const auto& r : from) {
    if (coin(rng, p)) out.insert(r);
  }
  return out;
}

inline RoleSet all_role_ids(const StoreImage& img) {
  RoleSet out;
  for (const auto& [id, r] : img.roles) {
    if (!r.kernel_only) out.insert(id);
  }
  return out;
}

// Runs `fn` on a copy and keeps the copy only if it did not throw.
template <typename Fn>
bool try_on(StoreImage& img, Fn&& fn) {
  StoreImage scratch = img;
  try {
    fn(scratch);
  } catch (const OsrError&) {
    return false;
  }
  img = std::move(scratch);
  return true;
}

struct PolicyShape {
  size_t max_roles = 12;
  size_t users = 3;
  size_t processes = 4;
  size_t files = 6;
};

// Registry defaults plus two extra object types; roles form a random DAG
// with containment respected and random symmetric conflicts. Every step goes
// through the model so the result satisfies all invariants.
inline StoreImage random_policy(Rng& rng, const PolicyShape& shape = {}) {
  StoreImage img;
  img.registry = RightsRegistry::defaults();
  img.registry.object_types.push_back({TypeId{"t1"}, "t1"});
  img.registry.object_types.push_back({TypeId{"t2"}, "t2"});
  const auto types = img.registry.type_keys(RightsCategory::kFd);

  const size_t n_roles = 2 + pick(rng, shape.max_roles - 1);
  for (size_t i = 0; i < n_roles; ++i) {
    RoleRecord r;
    r.id = RoleId{"r" + std::to_string(i)};
    r.name = r.id.str();
    r.permissions = random_permissions(rng, img.registry, 0.35);
    // Parents among earlier roles; the new role absorbs their permissions.
    RoleSet parents;
    for (size_t j = 0; j < i; ++j) {
      if (coin(rng, 0.2)) parents.insert(RoleId{"r" + std::to_string(j)});
    }
    for (const auto& p : parents) r.permissions.merge(img.roles.at(p).permissions);
    const RoleId id = r.id;
    model::add_role(img, std::move(r));
    for (const auto& p : parents) {
      RoleSet kids = img.roles.at(p).child_roles;
      kids.insert(id);
      try_on(img, [&](StoreImage& s) { model::set_child_roles(s, p, kids); });
    }
  }
  const RoleSet ids = all_role_ids(img);
  for (size_t k = 0; k < n_roles / 2; ++k) {
    const RoleId a = pick_from(rng, ids);
    const RoleId b = pick_from(rng, ids);
    if (a == b) continue;
    const bool dynamic = coin(rng);
    const auto kind = dynamic ? model::ConflictKind::kDynamic : model::ConflictKind::kStatic;
    RoleSet partners = dynamic ? img.roles.at(a).dynamic_conflict_roles
                               : img.roles.at(a).static_conflict_roles;
    partners.insert(b);
    try_on(img, [&](StoreImage& s) { model::set_conflict_roles(s, a, kind, partners); });
  }

  for (size_t u = 0; u < shape.users; ++u) {
    UserAci user;
    user.id = UserId{"u" + std::to_string(u)};
    user.default_object_type = pick_from(rng, types);
    img.users.emplace(user.id, user);
    const RoleSet max = random_subset(rng, ids, 0.3);
    try_on(img, [&](StoreImage& s) { model::assign_max_roles(s, user.id, max); });
    const RoleSet active = random_subset(rng, img.users.at(user.id).max_roles, 0.6);
    try_on(img, [&](StoreImage& s) { model::activate_roles(s, user.id, active); });
  }

  for (size_t f = 0; f < shape.files; ++f) {
    ObjectAci o;
    o.id = ObjectId{"/f" + std::to_string(f)};
    o.kind = f % 3 == 2 ? ObjectKind::kDir : ObjectKind::kFile;
    o.device_id = "hd0";
    o.rac_types = {pick_from(rng, types)};
    if (coin(rng, 0.3)) o.rac_types.insert(pick_from(rng, types));
    img.objects.emplace(o.id, o);
  }
  for (const char* dev : {"/dev/d0"}) {
    ObjectAci o{ObjectId{dev}, ObjectKind::kDevice, {pick_from(rng, types)}, false, {}, "hd0"};
    img.objects.emplace(o.id, o);
  }
  {
    ObjectAci o{ObjectId{"ipc0"}, ObjectKind::kIpc, {pick_from(rng, types)}, false, {}, ""};
    img.objects.emplace(o.id, o);
  }

  for (size_t p = 0; p < shape.processes; ++p) {
    ProcessAci proc;
    proc.id = ProcessId{std::to_string(100 + p)};
    proc.owner = UserId{"u" + std::to_string(pick(rng, shape.users))};
    proc.rac_types = {pick_from(rng, types)};
    img.processes.emplace(proc.id, proc);
    const auto& owner = img.users.at(proc.owner);
    const RoleSet max = owner.max_roles;
    const RoleSet active = owner.active_roles;
    if (!try_on(img, [&](StoreImage& s) {
          model::install_process_roles(s, proc.id, max, active, "gen");
        })) {
      model::install_process_roles(img, proc.id, {}, {}, "gen");
    }
  }
  img.system_process = ProcessId{"100"};
  return img;
}

// Applies one random model operation. Arguments are deliberately sloppy so
// that a fair share of operations are rejected. Throws OsrError on rejection;
// the image may then be partially modified, so callers run on a copy.
inline std::string random_mutation(Rng& rng, StoreImage& img, size_t role_cap = 12) {
  const RoleSet ids = all_role_ids(img);
  auto some_role = [&]() -> RoleId {
    if (ids.empty() || coin(rng, 0.03)) return RoleId{"missing"};
    return pick_from(rng, ids);
  };
  auto some_principal = [&]() -> Principal {
    if (coin(rng) && !img.users.empty()) return pick_from(rng, img.users).first;
    return pick_from(rng, img.processes).first;
  };
  size_t op = pick(rng, 9);
  if (op == 0 && img.roles.size() >= role_cap) op = 1;
  switch (op) {
    case 0: {
      RoleRecord r;
      r.id = RoleId{"n" + std::to_string(rng() % 1000)};
      r.name = r.id.str();
      r.permissions = random_permissions(rng, img.registry, 0.3);
      if (coin(rng, 0.3)) r.child_roles = random_subset(rng, ids, 0.2);
      if (coin(rng, 0.3)) r.static_conflict_roles = random_subset(rng, ids, 0.2);
      model::add_role(img, std::move(r));
      return "add_role";
    }
    case 1:
      model::delete_role(img, some_role());
      return "delete_role";
    case 2:
      model::set_child_roles(img, some_role(), random_subset(rng, ids, 0.25));
      return "set_child_roles";
    case 3: {
      const RoleId r = some_role();
      model::set_conflict_roles(img, r, model::ConflictKind::kStatic, random_subset(rng, ids, 0.2));
      return "set_static_conflicts";
    }
    case 4: {
      const RoleId r = some_role();
      model::set_conflict_roles(img, r, model::ConflictKind::kDynamic, random_subset(rng, ids, 0.2));
      return "set_dynamic_conflicts";
    }
    case 5:
      model::assign_max_roles(img, some_principal(), random_subset(rng, ids, 0.3));
      return "assign_max_roles";
    case 6: {
      const Principal p = some_principal();
      const RoleSet& max = std::holds_alternative<UserId>(p)
                               ? img.users.at(std::get<UserId>(p)).max_roles
                               : img.processes.at(std::get<ProcessId>(p)).max_roles;
      RoleSet want = random_subset(rng, max, 0.7);
      if (coin(rng, 0.1)) want.insert(some_role());
      model::activate_roles(img, p, want);
      return "activate_roles";
    }
    case 7: {
      const RoleId r = some_role();
      PermissionSet p = random_permissions(rng, img.registry, 0.4);
      if (coin(rng) && img.roles.contains(r)) p.merge(img.roles.at(r).permissions);
      model::set_role_permissions(img, r, p);
      return "set_role_permissions";
    }
    default: {
      const ProcessId pid = pick_from(rng, img.processes).first;
      RoleSet max = random_subset(rng, ids, 0.3);
      model::install_process_roles(img, pid, max, random_subset(rng, max, 0.6), "random");
      return "install_process_roles";
    }
  }
}

// Default state with extra roles holding random sysadm privileges, each
// assigned to a fresh user, plus executables carrying those roles.
inline StoreImage random_capability_state(Rng& rng, size_t extra_roles = 6) {
  StoreImage img = aef::bootstrap_default_state();
  const auto& reg = img.registry;
  std::vector<RoleId> extra;
  for (size_t i = 0; i < extra_roles; ++i) {
    RoleRecord r;
    r.id = RoleId{"ops" + std::to_string(i)};
    r.name = r.id.str();
    r.permissions = PermissionSet::empty(reg);
    r.permissions.table(RightsCategory::kFd)[builtin::kDefaultType] =
        PermissionBitVector::all(reg.width(RightsCategory::kFd));
    r.permissions.table(RightsCategory::kProc)[builtin::kDefaultType] =
        PermissionBitVector::all(reg.width(RightsCategory::kProc));
    r.permissions.privilege(PrivilegeClass::kSys) =
        random_bits(rng, reg.width(PrivilegeClass::kSys), 0.3);
    model::add_role(img, r);
    extra.push_back(r.id);
  }
  for (size_t i = 0; i < extra.size(); ++i) {
    UserAci u;
    u.id = UserId{"op" + std::to_string(i)};
    u.default_object_type = builtin::kDefaultType;
    img.users.emplace(u.id, u);
    RoleSet max = {extra[i], builtin::kGeneral};
    if (coin(rng)) max.insert(extra[(i + 1) % extra.size()]);
    model::assign_max_roles(img, u.id, max);
    model::activate_roles(img, u.id, random_subset(rng, max, 0.7));
  }
  for (size_t i = 0; i < extra.size(); ++i) {
    const ObjectId path{"/bin/tool" + std::to_string(i)};
    ObjectAci o{path, ObjectKind::kFile, {builtin::kDefaultType}, true, {extra[i]}, aef::kRootDevice};
    img.objects.emplace(path, o);
  }
  return img;
}

// Random events against a state built by random_capability_state. Pids refer
// to processes that may or may not exist by the time the event runs; such
// events simply fail and are recorded as errors.
inline std::vector<aef::SyscallEvent> random_trace(Rng& rng, const StoreImage& initial, size_t n) {
  std::vector<std::string> users;
  for (const auto& [id, u] : initial.users) users.push_back(id.str());
  std::vector<std::string> execs;
  for (const auto& [id, o] : initial.objects) {
    if (o.executable) execs.push_back(id.str());
  }
  std::vector<std::string> roles;
  for (const auto& [id, r] : initial.roles) roles.push_back(id.str());
  std::vector<std::string> pids = {initial.system_process.str()};
  int next_pid = 2;
  std::vector<aef::SyscallEvent> out;
  for (size_t seq = 1; out.size() < n; ++seq) {
    aef::SyscallEvent e;
    e.seq = seq;
    e.process = ProcessId{pick_from(rng, pids)};
    switch (pick(rng, 8)) {
      case 0:
      case 1: {
        const std::string child = std::to_string(next_pid++);
        e.name = "fork";
        e.args["child"] = child;
        pids.push_back(child);
        break;
      }
      case 2:
        e.name = "execve";
        e.args["path"] = pick_from(rng, execs);
        break;
      case 3:
        e.name = "setuid";
        e.args["user"] = pick_from(rng, users);
        break;
      case 4: {
        e.name = "rslx_set_attr";
        e.args = {{"kind", "process"},
                  {"id", pick_from(rng, pids)},
                  {"attr", "active_roles"},
                  {"value", pick_from(rng, roles)}};
        break;
      }
      case 5:
        e.name = "exit";
        break;
      case 6:
        e.name = "open";
        e.args = {{"path", "/tmp/x" + std::to_string(pick(rng, 5))}, {"flags", "wronly,creat"}};
        break;
      default:
        e.name = coin(rng) ? "sethostname" : "reboot";
        break;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace osr::testing
