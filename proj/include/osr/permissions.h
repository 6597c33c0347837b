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
#include <map>

#include "osr/bitvector.h"
#include "osr/ids.h"
#include "osr/rights.h"

namespace osr {

// Rights per object type within one ordinary category.
using RightsTable = std::map<TypeId, PermissionBitVector>;

// The nine permission lists of a role. Also used for the merged (effective)
// permissions cached on a process. A type missing from a table holds no
// rights, so equality and containment treat it as all-zero.
struct PermissionSet {
  std::array<RightsTable, kRightsCategoryCount> ordinary;
  std::array<PermissionBitVector, kPrivilegeClassCount> privileges;

  // All-zero privilege vectors sized from the registry, empty tables.
  static PermissionSet empty(const RightsRegistry& registry);
  // Every bit of every list, for every declared type key.
  static PermissionSet full(const RightsRegistry& registry);

  RightsTable& table(RightsCategory c) { return ordinary[static_cast<size_t>(c)]; }
  const RightsTable& table(RightsCategory c) const {
    return ordinary[static_cast<size_t>(c)];
  }
  PermissionBitVector& privilege(PrivilegeClass c) {
    return privileges[static_cast<size_t>(c)];
  }
  const PermissionBitVector& privilege(PrivilegeClass c) const {
    return privileges[static_cast<size_t>(c)];
  }

  bool has(RightsCategory c, const TypeId& type, size_t bit) const;
  bool has(PrivilegeClass c, size_t bit) const;

  void merge(const PermissionSet& other);
  // True when every bit held by `other` is also held here.
  bool contains(const PermissionSet& other) const;
  // Drops all-zero table entries.
  void normalize();

  friend bool operator==(const PermissionSet& a, const PermissionSet& b);
};

}  // namespace osr
