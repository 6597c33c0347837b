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

#include "osr/permissions.h"

namespace osr {

PermissionSet PermissionSet::empty(const RightsRegistry& registry) {
  PermissionSet p;
  for (auto c : kAllPrivilegeClasses) {
    p.privilege(c) = PermissionBitVector(registry.width(c));
  }
  return p;
}

PermissionSet PermissionSet::full(const RightsRegistry& registry) {
  PermissionSet p;
  for (auto c : kAllRightsCategories) {
    for (const auto& t : registry.type_keys(c)) {
      p.table(c)[t] = PermissionBitVector::all(registry.width(c));
    }
  }
  for (auto c : kAllPrivilegeClasses) {
    p.privilege(c) = PermissionBitVector::all(registry.width(c));
  }
  return p;
}

bool PermissionSet::has(RightsCategory c, const TypeId& type, size_t bit) const {
  const auto& t = table(c);
  auto it = t.find(type);
  return it != t.end() && it->second.test(bit);
}

bool PermissionSet::has(PrivilegeClass c, size_t bit) const {
  return privilege(c).test(bit);
}

void PermissionSet::merge(const PermissionSet& other) {
  for (auto c : kAllRightsCategories) {
    auto& mine = table(c);
    for (const auto& [type, vec] : other.table(c)) {
      auto it = mine.find(type);
      if (it == mine.end()) {
        mine.emplace(type, vec);
      } else {
        it->second.union_with(vec);
      }
    }
  }
  for (auto c : kAllPrivilegeClasses) {
    auto& mine = privilege(c);
    const auto& theirs = other.privilege(c);
    if (mine.width() == 0 && theirs.width() != 0) {
      mine = theirs;
    } else if (theirs.width() != 0) {
      mine.union_with(theirs);
    }
  }
}

bool PermissionSet::contains(const PermissionSet& other) const {
  for (auto c : kAllRightsCategories) {
    const auto& mine = table(c);
    for (const auto& [type, vec] : other.table(c)) {
      if (vec.none()) continue;
      auto it = mine.find(type);
      if (it == mine.end() || !it->second.contains(vec)) return false;
    }
  }
  for (auto c : kAllPrivilegeClasses) {
    const auto& theirs = other.privilege(c);
    if (theirs.none()) continue;
    const auto& mine = privilege(c);
    if (mine.width() != theirs.width() || !mine.contains(theirs)) return false;
  }
  return true;
}

void PermissionSet::normalize() {
  for (auto& t : ordinary) {
    std::erase_if(t, [](const auto& kv) { return kv.second.none(); });
  }
}

bool operator==(const PermissionSet& a, const PermissionSet& b) {
  return a.contains(b) && b.contains(a);
}

}  // namespace osr
