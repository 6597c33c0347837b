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

#include <compare>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <utility>

namespace osr {

// Strongly typed token. Different entity namespaces cannot be mixed up even
// though every token is a string underneath.
template <typename Tag>
class Id {
 public:
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {}
  explicit Id(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Id& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

using RoleId = Id<struct RoleTag>;
using UserId = Id<struct UserTag>;
using ProcessId = Id<struct ProcessTag>;
using ObjectId = Id<struct ObjectTag>;
using TypeId = Id<struct TypeTag>;

using RoleSet = std::set<RoleId>;
using TypeSet = std::set<TypeId>;

template <typename Tag>
std::set<std::string> to_strings(const std::set<Id<Tag>>& ids) {
  std::set<std::string> out;
  for (const auto& id : ids) out.insert(id.str());
  return out;
}

template <typename IdT>
std::set<IdT> from_strings(const std::set<std::string>& tokens) {
  std::set<IdT> out;
  for (const auto& t : tokens) out.emplace(t);
  return out;
}

}  // namespace osr

template <typename Tag>
struct std::hash<osr::Id<Tag>> {
  size_t operator()(const osr::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
