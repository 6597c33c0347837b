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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osr/ids.h"

namespace osr {

// Ordinary rights are indexed per object type; one category per target family.
enum class RightsCategory { kFd = 0, kDev, kProc, kIpc, kScd };
inline constexpr size_t kRightsCategoryCount = 5;
inline constexpr std::array<RightsCategory, kRightsCategoryCount>
    kAllRightsCategories = {RightsCategory::kFd, RightsCategory::kDev,
                            RightsCategory::kProc, RightsCategory::kIpc,
                            RightsCategory::kScd};

// Special (sec/sys/aud) and application-level privilege vectors.
enum class PrivilegeClass { kSec = 0, kSys, kAud, kApp };
inline constexpr size_t kPrivilegeClassCount = 4;
inline constexpr std::array<PrivilegeClass, kPrivilegeClassCount>
    kAllPrivilegeClasses = {PrivilegeClass::kSec, PrivilegeClass::kSys,
                            PrivilegeClass::kAud, PrivilegeClass::kApp};

std::string_view to_string(RightsCategory c);
std::string_view to_string(PrivilegeClass c);
std::optional<RightsCategory> parse_rights_category(std::string_view s);
std::optional<PrivilegeClass> parse_privilege_class(std::string_view s);

// Attribute name of a role's rights list, e.g. "fd_right_vectors_array".
std::string_view role_attribute_name(RightsCategory c);
std::string_view role_attribute_name(PrivilegeClass c);

struct ObjectTypeInfo {
  TypeId id;
  std::string name;
  friend bool operator==(const ObjectTypeInfo&, const ObjectTypeInfo&) = default;
};

// Declared vocabulary of a policy: right names per category, privilege names
// per class, object types and the fixed SCD types. The order of names fixes
// bit positions.
struct RightsRegistry {
  std::array<std::vector<std::string>, kRightsCategoryCount> ordinary;
  std::array<std::vector<std::string>, kPrivilegeClassCount> privileges;
  std::vector<ObjectTypeInfo> object_types;
  std::vector<std::string> scd_types;

  static RightsRegistry defaults();

  size_t width(RightsCategory c) const {
    return ordinary[static_cast<size_t>(c)].size();
  }
  size_t width(PrivilegeClass c) const {
    return privileges[static_cast<size_t>(c)].size();
  }
  std::optional<size_t> bit(RightsCategory c, std::string_view name) const;
  std::optional<size_t> bit(PrivilegeClass c, std::string_view name) const;
  // Throws OsrError(kUnregisteredRight).
  size_t require_bit(RightsCategory c, std::string_view name) const;
  size_t require_bit(PrivilegeClass c, std::string_view name) const;

  bool has_object_type(const TypeId& t) const;
  bool has_scd_type(std::string_view t) const;
  // Types valid as keys of a category's rights table.
  bool valid_type_key(RightsCategory c, const TypeId& t) const;
  std::vector<TypeId> type_keys(RightsCategory c) const;

  bool empty() const;
  // Names unique within each list; throws OsrError(kInvariantViolation).
  void validate() const;

  friend bool operator==(const RightsRegistry&, const RightsRegistry&) = default;
};

}  // namespace osr
