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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "osr/bitvector.h"
#include "osr/ids.h"
#include "osr/permissions.h"
#include "osr/rights.h"
#include "osr/role.h"

namespace osr {

struct UserAci {
  UserId id;
  RoleSet max_roles;
  RoleSet active_roles;
  // Type checked by creation notes when no explicit type is requested.
  TypeId default_object_type;
  // When nonempty, replaces the derived type list of this user's processes.
  TypeSet process_types_override;

  friend bool operator==(const UserAci&, const UserAci&) = default;
};

struct ProcessAci {
  ProcessId id;
  UserId owner;
  std::optional<ProcessId> parent;
  std::optional<ObjectId> exec_file;
  TypeSet rac_types;
  RoleSet max_roles;
  RoleSet active_roles;
  // Caches, always equal to the merge over active_roles.
  PermissionSet effective;
  PermissionBitVector effective_caps;

  friend bool operator==(const ProcessAci&, const ProcessAci&) = default;
};

enum class ObjectKind { kFile, kDir, kDevice, kIpc };
std::string_view to_string(ObjectKind k);
std::optional<ObjectKind> parse_object_kind(std::string_view s);

struct ObjectAci {
  ObjectId id;
  ObjectKind kind = ObjectKind::kFile;
  TypeSet rac_types;
  bool executable = false;
  // Only meaningful for executable files.
  RoleSet exec_file_roles;
  // Storage device for files, dirs and devices; empty for IPC.
  std::string device_id;

  friend bool operator==(const ObjectAci&, const ObjectAci&) = default;
};

// All access control information. Value type: mutations happen on a copy that
// replaces the published image only when every invariant still holds.
struct StoreImage {
  RightsRegistry registry;
  RoleTable roles;
  std::map<UserId, UserAci> users;
  std::map<ProcessId, ProcessAci> processes;
  std::map<ObjectId, ObjectAci> objects;
  uint64_t generation = 0;
  uint64_t flushed_generation = 0;
  // The only process that may hold kernel-only roles.
  ProcessId system_process{"1"};

  bool dirty() const noexcept { return generation > flushed_generation; }
  bool empty() const noexcept {
    return roles.empty() && users.empty() && processes.empty() &&
           objects.empty();
  }

  // Objects grouped per storage device, in id order within a device.
  std::map<std::string, std::vector<const ObjectAci*>> objects_by_device() const;

  const RoleRecord& role(const RoleId& id) const;
  const UserAci& user(const UserId& id) const;
  const ProcessAci& process(const ProcessId& id) const;
  const ObjectAci& object(const ObjectId& id) const;
  RoleRecord& role(const RoleId& id);
  UserAci& user(const UserId& id);
  ProcessAci& process(const ProcessId& id);
  ObjectAci& object(const ObjectId& id);
};

// Full structural equality, caches and counters included.
bool operator==(const StoreImage& a, const StoreImage& b);

// Principals that carry max/active role sets.
using Principal = std::variant<UserId, ProcessId>;
std::string describe(const Principal& p);

// Side-channel lines produced while mutating (capability recomputes and other
// derived updates). Collected by callers that audit.
struct Journal {
  std::vector<std::string> lines;
  void add(std::string line) { lines.push_back(std::move(line)); }
};

}  // namespace osr
