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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osr/aci.h"
#include "osr/request.h"

namespace osr::aef {

struct SyscallEvent {
  uint64_t seq = 0;
  ProcessId process;
  std::string name;
  std::map<std::string, std::string> args;

  std::optional<std::string> arg(std::string_view key) const;
  // Throws kBadArguments when absent or empty.
  const std::string& require(std::string_view key) const;

  friend bool operator==(const SyscallEvent&, const SyscallEvent&) = default;
};

// Maps spelling variants ("Fork", "execve", "shmat", "lpc") to the canonical
// lower-case name used by the mapping table.
std::optional<std::string> canonical_syscall(std::string_view name);

// One row of the enforcement vocabulary: the request and the calls issuing it.
struct SyscallRow {
  RequestType request;
  std::vector<std::string_view> syscalls;
};
const std::vector<SyscallRow>& syscall_table();

std::span<const std::string_view> unmediated_syscalls();
bool is_unmediated(std::string_view name);

// Requests issued by an event, in the order the simulator decides them.
// Targets are resolved against `image`: object ids are absolute paths, IPC
// objects use the `id` argument and process targets use `pid` (defaulting to
// the caller). Path component SEARCH requests are added by the simulator, not
// here. Throws kUnmediatedSyscall, kUnknownSyscall, kBadArguments,
// kTargetNotFound.
std::vector<AccessRequest> map_syscall_event(const StoreImage& image,
                                             const SyscallEvent& event);

// Pid given to the next forked child when the event names none.
ProcessId next_process_id(const StoreImage& image);

// "/a/b" -> "/a"; "/a" -> "/"; "/" -> nullopt.
std::optional<std::string> parent_path(std::string_view path);

TargetKind target_kind_of(ObjectKind kind);

}  // namespace osr::aef
