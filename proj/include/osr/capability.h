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

#include <string_view>

#include "osr/aci.h"

// Effective capability vector of a process, derived only from the
// system-admin privileges of its active roles. No POSIX transition rules.
namespace osr::capability {

// Union of sysadm privileges over `roles`.
PermissionBitVector caps_for_roles(const StoreImage& image, const RoleSet& roles);

// Recomputes and installs the process's vector; journals old/new when a
// journal is given. Throws kNotFound.
PermissionBitVector recompute_effective_caps(StoreImage& image,
                                             const ProcessId& pid,
                                             std::string_view trigger,
                                             Journal* journal = nullptr);

// Reads the installed vector. Throws kUnregisteredRight / kNotFound.
bool has_capability(const StoreImage& image, const ProcessId& pid,
                    std::string_view cap_name);

}  // namespace osr::capability
