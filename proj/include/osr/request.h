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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osr/ids.h"

namespace osr {

// Every request token of the decision matrix. The enumerator order is the
// matrix row order.
enum class RequestType {
  kAddToKernel,
  kAlter,
  kAppendOpen,
  kReadWriteOpen,
  kChangeGroup,
  kChangeOwner,
  kChdir,
  kRead,
  kSearch,
  kWrite,
  kClone,
  kCreate,
  kDelete,
  kExecute,
  kGetPermissionsData,
  kGetStatusData,
  kLinkHard,
  kTruncate,
  kModifyAccessData,
  kRename,
  kModifyAttribute,
  kModifyPermissionsData,
  kModifySystemData,
  kMount,
  kReadAttribute,
  kReadOpen,
  kRemoveFromKernel,
  kSendSignal,
  kTrace,
  kShutdown,
  kSwitchLog,
  kSwitchModule,
  kTerminate,
  kWriteOpen,
  kUmount,
  kAuditStop,
  kAuditSaveConfig,
  kAuditReloadConfig,
  kAuditWork,
  kAuditStart,
  kMacAddToKernel,
  kMacMount,
  kMacShutdown,
  kMacRemoveFromKernel,
  kMacUmount,
  kIacModifyAttribute,
  kIacReadAttribute,
  kMacGetStatusData,
  kMacModifyAttribute,
  kMacModifyPermissionsData,
  kMacReadAttribute,
  kMacSwitchLog,
  kMacSwitchModule,
  kApplication,
};
inline constexpr size_t kRequestTypeCount =
    static_cast<size_t>(RequestType::kApplication) + 1;

std::span<const RequestType> all_request_types();

// Matrix token, e.g. "R_READ_OPEN".
std::string_view to_string(RequestType r);
// Enforcement-side token: the matrix token without "R_"; the application
// right request is issued as "CHECK_APP_RIGHT".
std::string_view enforcement_name(RequestType r);
// Accepts matrix tokens, enforcement tokens and the "R_SEARACH" spelling.
std::optional<RequestType> parse_request_type(std::string_view token);
// Ordinary right name checked by CR: the token without "R_".
std::string_view right_name(RequestType r);

enum class TargetKind { kFile, kDir, kDev, kProcess, kIpc, kScd, kNone };
inline constexpr std::array<TargetKind, 6> kMatrixColumns = {
    TargetKind::kFile,    TargetKind::kDir, TargetKind::kDev,
    TargetKind::kProcess, TargetKind::kIpc, TargetKind::kScd};
std::string_view to_string(TargetKind k);
std::optional<TargetKind> parse_target_kind(std::string_view token);

enum class CheckKind {
  kCR,
  kCPSec,
  kCPSys,
  kCPAud,
  kCPApp,
  kNote1,
  kNote2,
  kNote3,
  kNote4,
  kNote5,
};
std::string_view to_string(CheckKind c);
std::optional<CheckKind> parse_check_kind(std::string_view token);

enum class PostAction { kSR, kST };
std::string_view to_string(PostAction a);
std::optional<PostAction> parse_post_action(std::string_view token);

struct TargetRef {
  TargetKind kind = TargetKind::kNone;
  std::string id;

  friend bool operator==(const TargetRef&, const TargetRef&) = default;
  friend auto operator<=>(const TargetRef&, const TargetRef&) = default;
};
std::string describe(const TargetRef& t);

// Request-specific inputs used by the notes and privilege checks.
struct RequestParams {
  std::optional<UserId> new_owner;
  std::optional<ObjectId> exec_file;
  std::optional<TypeId> explicit_type;
  std::optional<std::string> app_right;

  friend bool operator==(const RequestParams&, const RequestParams&) = default;
};

struct AccessRequest {
  RequestType type = RequestType::kRead;
  ProcessId subject;
  TargetRef target;
  RequestParams params;

  friend bool operator==(const AccessRequest&, const AccessRequest&) = default;
};
std::string describe(const AccessRequest& r);

enum class Verdict { kAllow, kDeny };
std::string_view to_string(Verdict v);

struct ModuleVerdict {
  std::string module;
  Verdict verdict = Verdict::kAllow;
  friend bool operator==(const ModuleVerdict&, const ModuleVerdict&) = default;
};

struct Decision {
  Verdict verdict = Verdict::kAllow;
  // Failing check token on deny ("CR", "CP_sec", "NOTE_3", "UNDEFINED_CELL",
  // "MODULE:<name>"); empty on allow.
  std::string reason;
  std::string detail;
  std::set<PostAction> post_actions;
  std::vector<ModuleVerdict> module_verdicts;

  bool allowed() const noexcept { return verdict == Verdict::kAllow; }
  friend bool operator==(const Decision&, const Decision&) = default;
};
std::string describe(const Decision& d);

}  // namespace osr
