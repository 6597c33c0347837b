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

#include "osr/aci.h"

#include "osr/error.h"

namespace osr {

std::string_view to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::kFile: return "file";
    case ObjectKind::kDir: return "dir";
    case ObjectKind::kDevice: return "device";
    case ObjectKind::kIpc: return "ipc";
  }
  return "?";
}

std::optional<ObjectKind> parse_object_kind(std::string_view s) {
  for (auto k : {ObjectKind::kFile, ObjectKind::kDir, ObjectKind::kDevice,
                 ObjectKind::kIpc}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::map<std::string, std::vector<const ObjectAci*>>
StoreImage::objects_by_device() const {
  std::map<std::string, std::vector<const ObjectAci*>> out;
  for (const auto& [id, obj] : objects) out[obj.device_id].push_back(&obj);
  return out;
}

namespace {

template <typename Map, typename Key>
auto& find_or_throw(Map& map, const Key& key, std::string_view what) {
  auto it = map.find(key);
  if (it == map.end()) {
    throw OsrError(ErrorCode::kNotFound,
                   std::string(what) + " '" + key.str() + "' not found",
                   key.str());
  }
  return it->second;
}

}  // namespace

const RoleRecord& StoreImage::role(const RoleId& id) const {
  return find_or_throw(roles, id, "role");
}
const UserAci& StoreImage::user(const UserId& id) const {
  return find_or_throw(users, id, "user");
}
const ProcessAci& StoreImage::process(const ProcessId& id) const {
  return find_or_throw(processes, id, "process");
}
const ObjectAci& StoreImage::object(const ObjectId& id) const {
  return find_or_throw(objects, id, "object");
}
RoleRecord& StoreImage::role(const RoleId& id) {
  return find_or_throw(roles, id, "role");
}
UserAci& StoreImage::user(const UserId& id) {
  return find_or_throw(users, id, "user");
}
ProcessAci& StoreImage::process(const ProcessId& id) {
  return find_or_throw(processes, id, "process");
}
ObjectAci& StoreImage::object(const ObjectId& id) {
  return find_or_throw(objects, id, "object");
}

bool operator==(const StoreImage& a, const StoreImage& b) {
  return a.registry == b.registry && a.roles == b.roles && a.users == b.users &&
         a.processes == b.processes && a.objects == b.objects &&
         a.generation == b.generation &&
         a.flushed_generation == b.flushed_generation &&
         a.system_process == b.system_process;
}

std::string describe(const Principal& p) {
  if (const auto* u = std::get_if<UserId>(&p)) return "user:" + u->str();
  return "process:" + std::get<ProcessId>(p).str();
}

}  // namespace osr
