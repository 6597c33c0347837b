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

#include "osr/capability.h"

#include "osr/error.h"

namespace osr::capability {

PermissionBitVector caps_for_roles(const StoreImage& image,
                                   const RoleSet& roles) {
  PermissionBitVector caps(image.registry.width(PrivilegeClass::kSys));
  for (const auto& r : roles) {
    const auto& sys = image.role(r).permissions.privilege(PrivilegeClass::kSys);
    if (sys.width() == caps.width()) caps.union_with(sys);
  }
  return caps;
}

PermissionBitVector recompute_effective_caps(StoreImage& image,
                                             const ProcessId& pid,
                                             std::string_view trigger,
                                             Journal* journal) {
  auto& proc = image.process(pid);
  PermissionBitVector next = caps_for_roles(image, proc.active_roles);
  if (journal != nullptr && next != proc.effective_caps) {
    journal->add("caps pid=" + pid.str() + " old=" +
                 proc.effective_caps.to_string() + " new=" + next.to_string() +
                 " trigger=" + std::string(trigger));
  }
  proc.effective_caps = next;
  return next;
}

bool has_capability(const StoreImage& image, const ProcessId& pid,
                    std::string_view cap_name) {
  size_t bit = image.registry.require_bit(PrivilegeClass::kSys, cap_name);
  return image.process(pid).effective_caps.test(bit);
}

}  // namespace osr::capability
