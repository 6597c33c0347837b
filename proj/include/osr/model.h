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

#include <optional>
#include <utility>
#include <vector>

#include "osr/aci.h"
#include "osr/role.h"

// Role model: hierarchy, separation-of-duty constraints and the permission
// algebra. Every mutating function works on a StoreImage in place and throws
// OsrError on the first violated rule; callers run them on a scratch copy so a
// throw leaves the published image untouched.
namespace osr::model {

// --- pure queries over a role table -------------------------------------

// `roles` plus every transitive parent (roles reachable over reverse child
// edges). Throws kNotFound for unknown ids.
RoleSet inherited_closure(const RoleTable& table, const RoleSet& roles);

// Roles strictly below `role` (transitive children).
RoleSet descendants(const RoleTable& table, const RoleId& role);

// Drops every member that is an ancestor of another member; the child already
// holds all of the parent's permissions.
RoleSet reduce_redundant_parents(const RoleTable& table, const RoleSet& roles);

std::optional<std::pair<RoleId, RoleId>> find_static_conflict(
    const RoleTable& table, const RoleSet& roles);
std::optional<std::pair<RoleId, RoleId>> find_dynamic_conflict(
    const RoleTable& table, const RoleSet& roles);
// First pair (a in lhs, b in rhs) in static conflict.
std::optional<std::pair<RoleId, RoleId>> find_static_conflict_between(
    const RoleTable& table, const RoleSet& lhs, const RoleSet& rhs);

// Bitwise union of the nine lists over `roles`. Throws kNotFound.
PermissionSet merge_effective_permissions(const RoleTable& table,
                                          const RightsRegistry& registry,
                                          const RoleSet& roles);

bool has_cycle(const RoleTable& table);

// --- mutations ------------------------------------------------------------

// Registers a batch of roles. Conflict references may point into the batch,
// so mutually conflicting new roles can be added together; asymmetric
// conflict lists are rejected, never repaired.
void add_roles(StoreImage& image, std::vector<RoleRecord> records,
               Journal* journal = nullptr);
RoleId add_role(StoreImage& image, RoleRecord record, Journal* journal = nullptr);

void delete_role(StoreImage& image, const RoleId& role,
                 Journal* journal = nullptr);

void set_child_roles(StoreImage& image, const RoleId& role, RoleSet children,
                     Journal* journal = nullptr);

// Replaces the role's nine permission lists. Built-in roles refuse; containment
// with parents and children is re-checked.
void set_role_permissions(StoreImage& image, const RoleId& role,
                          PermissionSet permissions, Journal* journal = nullptr);

enum class ConflictKind { kStatic, kDynamic };
// Sets the conflict list of `role`; partners are updated on both sides in
// one step so the stored relation stays symmetric.
void set_conflict_roles(StoreImage& image, const RoleId& role,
                        ConflictKind kind, RoleSet partners,
                        Journal* journal = nullptr);

void assign_max_roles(StoreImage& image, const Principal& principal,
                      RoleSet roles, Journal* journal = nullptr);
void activate_roles(StoreImage& image, const Principal& principal,
                    RoleSet roles, Journal* journal = nullptr);

// Installs both role sets on a process at once (fork/exec/setuid paths).
// Applies the same checks as assign + activate.
void install_process_roles(StoreImage& image, const ProcessId& pid,
                           RoleSet max_roles, RoleSet active_roles,
                           std::string_view trigger, Journal* journal = nullptr);

// Recomputes effective permissions and capabilities of every process.
void refresh_all_processes(StoreImage& image, std::string_view trigger,
                           Journal* journal = nullptr);

// --- validation -----------------------------------------------------------

// Checks a single record's local shape (self edges, widths, type keys).
void validate_record_shape(const RightsRegistry& registry,
                           const RoleRecord& record);

// Re-checks every invariant of the image: role graph, conflicts symmetry,
// containment, SoD on every principal, object shape, cache coherence.
// Throws kInvariantViolation (or a more specific code) on the first failure.
void validate_image(const StoreImage& image);

}  // namespace osr::model
