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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "osr/syscalls.h"

// Trace files: one event per line, `seq pid syscall key=value ...`, UTF-8.
// Values are percent-decoded; '#' starts a comment line. Sequence numbers
// must strictly increase. Format documented in docs/trace-format.md.
namespace osr::aef {

// Throws kTraceParseError naming `origin:line`.
std::vector<SyscallEvent> parse_trace(std::string_view text,
                                      const std::string& origin = "trace");
std::vector<SyscallEvent> load_trace(const std::filesystem::path& file);

// Inverse of parse_trace for a single event.
std::string format_event(const SyscallEvent& event);

}  // namespace osr::aef
