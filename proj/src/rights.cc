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

#include "osr/rights.h"

#include <algorithm>
#include <set>

#include "osr/error.h"
#include "osr/role.h"

namespace osr {

std::string_view to_string(RightsCategory c) {
  switch (c) {
    case RightsCategory::kFd: return "fd";
    case RightsCategory::kDev: return "dev";
    case RightsCategory::kProc: return "proc";
    case RightsCategory::kIpc: return "ipc";
    case RightsCategory::kScd: return "scd";
  }
  return "?";
}

std::string_view to_string(PrivilegeClass c) {
  switch (c) {
    case PrivilegeClass::kSec: return "sec";
    case PrivilegeClass::kSys: return "sys";
    case PrivilegeClass::kAud: return "aud";
    case PrivilegeClass::kApp: return "app";
  }
  return "?";
}

std::optional<RightsCategory> parse_rights_category(std::string_view s) {
  for (auto c : kAllRightsCategories) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::optional<PrivilegeClass> parse_privilege_class(std::string_view s) {
  for (auto c : kAllPrivilegeClasses) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view role_attribute_name(RightsCategory c) {
  switch (c) {
    case RightsCategory::kFd: return "fd_right_vectors_array";
    case RightsCategory::kDev: return "dev_right_vectors_array";
    case RightsCategory::kProc: return "proc_right_vectors_array";
    case RightsCategory::kIpc: return "ipc_right_vectors_array";
    case RightsCategory::kScd: return "scd_right_vectors_array";
  }
  return "?";
}

std::string_view role_attribute_name(PrivilegeClass c) {
  switch (c) {
    case PrivilegeClass::kSec: return "secadm_privileges";
    case PrivilegeClass::kSys: return "sysadm_privileges";
    case PrivilegeClass::kAud: return "audadm_privileges";
    case PrivilegeClass::kApp: return "app_privileges";
  }
  return "?";
}

RightsRegistry RightsRegistry::defaults() {
  RightsRegistry r;
  auto& ord = r.ordinary;
  // Ordinary rights are named after the requests that check them.
  ord[static_cast<size_t>(RightsCategory::kFd)] = {
      "ADD_TO_KERNEL", "APPEND_OPEN",   "CHANGE_GROUP",
      "CHANGE_OWNER",  "CHDIR",         "CREATE",
      "DELETE",        "EXECUTE",       "LINK_HARD",
      "MODIFY_ACCESS_DATA", "MODIFY_PERMISSIONS_DATA", "MOUNT",
      "READ_OPEN",     "UMOUNT",        "WRITE_OPEN"};
  ord[static_cast<size_t>(RightsCategory::kDev)] = {
      "APPEND_OPEN", "MOUNT", "READ_OPEN", "UMOUNT", "WRITE_OPEN"};
  ord[static_cast<size_t>(RightsCategory::kProc)] = {"CREATE", "SEND_SIGNAL",
                                                     "TERMINATE"};
  ord[static_cast<size_t>(RightsCategory::kIpc)] = {
      "ALTER",  "APPEND_OPEN", "CHANGE_GROUP", "CHANGE_OWNER", "CREATE",
      "DELETE", "MODIFY_PERMISSIONS_DATA", "READ_OPEN", "WRITE_OPEN"};
  ord[static_cast<size_t>(RightsCategory::kScd)] = {
      "GET_STATUS_DATA", "MODIFY_PERMISSIONS_DATA", "MODIFY_SYSTEM_DATA"};

  auto& priv = r.privileges;
  priv[static_cast<size_t>(PrivilegeClass::kSec)] = {
      "MODIFY_ATTRIBUTE",     "READ_ATTRIBUTE",
      "IAC_MODIFY_ATTRIBUTE", "IAC_READ_ATTRIBUTE",
      "MAC_GET_STATUS_DATA",  "MAC_MODIFY_ATTRIBUTE",
      "MAC_MODIFY_PERMISSIONS_DATA", "MAC_READ_ATTRIBUTE",
      "MAC_SWITCH_LOG",       "MAC_SWITCH_MODULE"};
  priv[static_cast<size_t>(PrivilegeClass::kSys)] = {
      "change_any_owner", "network_admin", "reboot",        "module_admin",
      "mount_admin",      "set_time",      "raw_io",        "kill_any",
      "set_uid",          "set_gid",       "dac_override",  "resource_limits"};
  priv[static_cast<size_t>(PrivilegeClass::kAud)] = {
      "AUDIT_STOP", "AUDIT_SAVE_CONFIG", "AUDIT_RELOAD_CONFIG", "AUDIT_WORK",
      "AUDIT_START"};
  priv[static_cast<size_t>(PrivilegeClass::kApp)] = {
      "approve-invoice", "print-report", "export-data"};

  r.object_types = {{builtin::kDefaultType, "缺省型"},
                    {builtin::kSecurityType, "安全型"},
                    {builtin::kAuditType, "审计型"}};
  // Fixed SCD types, one per family of system-data syscalls.
  r.scd_types = {"time", "host_id", "rlimit", "swap", "syslog", "ioports",
                 "kernel"};
  return r;
}

namespace {

std::optional<size_t> index_of(const std::vector<std::string>& names,
                               std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<size_t>(it - names.begin());
}

}  // namespace

std::optional<size_t> RightsRegistry::bit(RightsCategory c,
                                          std::string_view name) const {
  return index_of(ordinary[static_cast<size_t>(c)], name);
}

std::optional<size_t> RightsRegistry::bit(PrivilegeClass c,
                                          std::string_view name) const {
  return index_of(privileges[static_cast<size_t>(c)], name);
}

size_t RightsRegistry::require_bit(RightsCategory c,
                                   std::string_view name) const {
  if (auto b = bit(c, name)) return *b;
  throw OsrError(ErrorCode::kUnregisteredRight,
                 "right '" + std::string(name) + "' not registered in category " +
                     std::string(to_string(c)),
                 std::string(name));
}

size_t RightsRegistry::require_bit(PrivilegeClass c,
                                   std::string_view name) const {
  if (auto b = bit(c, name)) return *b;
  throw OsrError(ErrorCode::kUnregisteredRight,
                 "privilege '" + std::string(name) + "' not registered in class " +
                     std::string(to_string(c)),
                 std::string(name));
}

bool RightsRegistry::has_object_type(const TypeId& t) const {
  return std::any_of(object_types.begin(), object_types.end(),
                     [&](const ObjectTypeInfo& i) { return i.id == t; });
}

bool RightsRegistry::has_scd_type(std::string_view t) const {
  return std::find(scd_types.begin(), scd_types.end(), t) != scd_types.end();
}

bool RightsRegistry::valid_type_key(RightsCategory c, const TypeId& t) const {
  return c == RightsCategory::kScd ? has_scd_type(t.str()) : has_object_type(t);
}

std::vector<TypeId> RightsRegistry::type_keys(RightsCategory c) const {
  std::vector<TypeId> out;
  if (c == RightsCategory::kScd) {
    for (const auto& s : scd_types) out.emplace_back(s);
  } else {
    for (const auto& t : object_types) out.push_back(t.id);
  }
  return out;
}

bool RightsRegistry::empty() const {
  if (!object_types.empty() || !scd_types.empty()) return false;
  for (const auto& v : ordinary) {
    if (!v.empty()) return false;
  }
  for (const auto& v : privileges) {
    if (!v.empty()) return false;
  }
  return true;
}

void RightsRegistry::validate() const {
  auto check_unique = [](const std::vector<std::string>& names,
                         std::string_view what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (n.empty() || !seen.insert(n).second) {
        throw OsrError(ErrorCode::kInvariantViolation,
                       "duplicate or empty name '" + n + "' in " +
                           std::string(what),
                       n);
      }
    }
  };
  for (auto c : kAllRightsCategories) {
    check_unique(ordinary[static_cast<size_t>(c)],
                 "rights " + std::string(to_string(c)));
  }
  for (auto c : kAllPrivilegeClasses) {
    check_unique(privileges[static_cast<size_t>(c)],
                 "privileges " + std::string(to_string(c)));
  }
  std::vector<std::string> types;
  for (const auto& t : object_types) types.push_back(t.id.str());
  check_unique(types, "object types");
  check_unique(scd_types, "scd types");
}

}  // namespace osr
