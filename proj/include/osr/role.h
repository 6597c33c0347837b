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

#include <map>
#include <string>

#include "osr/ids.h"
#include "osr/permissions.h"

namespace osr {

struct RoleRecord {
  RoleId id;
  std::string name;
  RoleSet child_roles;
  RoleSet static_conflict_roles;
  RoleSet dynamic_conflict_roles;
  PermissionSet permissions;
  // False for the built-in privileged roles.
  bool mutable_permissions = true;
  // Role may only be granted by the kernel to the system process.
  bool kernel_only = false;

  friend bool operator==(const RoleRecord&, const RoleRecord&) = default;
};

using RoleTable = std::map<RoleId, RoleRecord>;

namespace builtin {
inline const RoleId kTrustedSysAdmin{"trusted_sysadm"};
inline const RoleId kSysAdmin{"sysadm"};
inline const RoleId kSecAdmin{"secadm"};
inline const RoleId kAuditor{"auditor"};
inline const RoleId kGeneral{"general"};

inline const TypeId kDefaultType{"default"};
inline const TypeId kSecurityType{"security"};
inline const TypeId kAuditType{"audit"};
}  // namespace builtin

}  // namespace osr
