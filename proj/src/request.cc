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

#include "osr/request.h"

#include <array>

namespace osr {
namespace {

struct RequestInfo {
  RequestType type;
  std::string_view token;
};

constexpr std::array<RequestInfo, kRequestTypeCount> kRequests = {{
    {RequestType::kAddToKernel, "R_ADD_TO_KERNEL"},
    {RequestType::kAlter, "R_ALTER"},
    {RequestType::kAppendOpen, "R_APPEND_OPEN"},
    {RequestType::kReadWriteOpen, "R_READ_WRITE_OPEN"},
    {RequestType::kChangeGroup, "R_CHANGE_GROUP"},
    {RequestType::kChangeOwner, "R_CHANGE_OWNER"},
    {RequestType::kChdir, "R_CHDIR"},
    {RequestType::kRead, "R_READ"},
    {RequestType::kSearch, "R_SEARCH"},
    {RequestType::kWrite, "R_WRITE"},
    {RequestType::kClone, "R_CLONE"},
    {RequestType::kCreate, "R_CREATE"},
    {RequestType::kDelete, "R_DELETE"},
    {RequestType::kExecute, "R_EXECUTE"},
    {RequestType::kGetPermissionsData, "R_GET_PERMISSIONS_DATA"},
    {RequestType::kGetStatusData, "R_GET_STATUS_DATA"},
    {RequestType::kLinkHard, "R_LINK_HARD"},
    {RequestType::kTruncate, "R_TRUNCATE"},
    {RequestType::kModifyAccessData, "R_MODIFY_ACCESS_DATA"},
    {RequestType::kRename, "R_RENAME"},
    {RequestType::kModifyAttribute, "R_MODIFY_ATTRIBUTE"},
    {RequestType::kModifyPermissionsData, "R_MODIFY_PERMISSIONS_DATA"},
    {RequestType::kModifySystemData, "R_MODIFY_SYSTEM_DATA"},
    {RequestType::kMount, "R_MOUNT"},
    {RequestType::kReadAttribute, "R_READ_ATTRIBUTE"},
    {RequestType::kReadOpen, "R_READ_OPEN"},
    {RequestType::kRemoveFromKernel, "R_REMOVE_FROM_KERNEL"},
    {RequestType::kSendSignal, "R_SEND_SIGNAL"},
    {RequestType::kTrace, "R_TRACE"},
    {RequestType::kShutdown, "R_SHUTDOWN"},
    {RequestType::kSwitchLog, "R_SWITCH_LOG"},
    {RequestType::kSwitchModule, "R_SWITCH_MODULE"},
    {RequestType::kTerminate, "R_TERMINATE"},
    {RequestType::kWriteOpen, "R_WRITE_OPEN"},
    {RequestType::kUmount, "R_UMOUNT"},
    {RequestType::kAuditStop, "R_AUDIT_STOP"},
    {RequestType::kAuditSaveConfig, "R_AUDIT_SAVE_CONFIG"},
    {RequestType::kAuditReloadConfig, "R_AUDIT_RELOAD_CONFIG"},
    {RequestType::kAuditWork, "R_AUDIT_WORK"},
    {RequestType::kAuditStart, "R_AUDIT_START"},
    {RequestType::kMacAddToKernel, "R_MAC_ADD_TO_KERNEL"},
    {RequestType::kMacMount, "R_MAC_MOUNT"},
    {RequestType::kMacShutdown, "R_MAC_SHUTDOWN"},
    {RequestType::kMacRemoveFromKernel, "R_MAC_REMOVE_FROM_KERNEL"},
    {RequestType::kMacUmount, "R_MAC_UMOUNT"},
    {RequestType::kIacModifyAttribute, "R_IAC_MODIFY_ATTRIBUTE"},
    {RequestType::kIacReadAttribute, "R_IAC_READ_ATTRIBUTE"},
    {RequestType::kMacGetStatusData, "R_MAC_GET_STATUS_DATA"},
    {RequestType::kMacModifyAttribute, "R_MAC_MODIFY_ATTRIBUTE"},
    {RequestType::kMacModifyPermissionsData, "R_MAC_MODIFY_PERMISSIONS_DATA"},
    {RequestType::kMacReadAttribute, "R_MAC_READ_ATTRIBUTE"},
    {RequestType::kMacSwitchLog, "R_MAC_SWITCH_LOG"},
    {RequestType::kMacSwitchModule, "R_MAC_SWITCH_MODULE"},
    {RequestType::kApplication, "R_APPLICATION"},
}};

constexpr std::array<RequestType, kRequestTypeCount> make_all() {
  std::array<RequestType, kRequestTypeCount> out{};
  for (size_t i = 0; i < kRequestTypeCount; ++i) out[i] = kRequests[i].type;
  return out;
}
constexpr auto kAllRequests = make_all();

}  // namespace

std::span<const RequestType> all_request_types() { return kAllRequests; }

std::string_view to_string(RequestType r) {
  return kRequests[static_cast<size_t>(r)].token;
}

std::string_view enforcement_name(RequestType r) {
  if (r == RequestType::kApplication) return "CHECK_APP_RIGHT";
  return right_name(r);
}

std::string_view right_name(RequestType r) { return to_string(r).substr(2); }

std::optional<RequestType> parse_request_type(std::string_view token) {
  if (token == "R_SEARACH") return RequestType::kSearch;
  if (token == "CHECK_APP_RIGHT") return RequestType::kApplication;
  for (const auto& info : kRequests) {
    if (info.token == token || info.token.substr(2) == token) return info.type;
  }
  return std::nullopt;
}

std::string_view to_string(TargetKind k) {
  switch (k) {
    case TargetKind::kFile: return "T_FILE";
    case TargetKind::kDir: return "T_DIR";
    case TargetKind::kDev: return "T_DEV";
    case TargetKind::kProcess: return "T_PROCESS";
    case TargetKind::kIpc: return "T_IPC";
    case TargetKind::kScd: return "T_SCD";
    case TargetKind::kNone: return "T_NONE";
  }
  return "?";
}

std::optional<TargetKind> parse_target_kind(std::string_view token) {
  for (auto k : {TargetKind::kFile, TargetKind::kDir, TargetKind::kDev,
                 TargetKind::kProcess, TargetKind::kIpc, TargetKind::kScd,
                 TargetKind::kNone}) {
    std::string_view t = to_string(k);
    if (t == token || t.substr(2) == token) return k;
  }
  static constexpr std::pair<std::string_view, TargetKind> kLower[] = {
      {"file", TargetKind::kFile},       {"dir", TargetKind::kDir},
      {"dev", TargetKind::kDev},         {"device", TargetKind::kDev},
      {"process", TargetKind::kProcess}, {"ipc", TargetKind::kIpc},
      {"scd", TargetKind::kScd},         {"none", TargetKind::kNone}};
  for (const auto& [name, kind] : kLower) {
    if (name == token) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(CheckKind c) {
  switch (c) {
    case CheckKind::kCR: return "CR";
    case CheckKind::kCPSec: return "CP_sec";
    case CheckKind::kCPSys: return "CP_sys";
    case CheckKind::kCPAud: return "CP_aud";
    case CheckKind::kCPApp: return "CP_app";
    case CheckKind::kNote1: return "NOTE_1";
    case CheckKind::kNote2: return "NOTE_2";
    case CheckKind::kNote3: return "NOTE_3";
    case CheckKind::kNote4: return "NOTE_4";
    case CheckKind::kNote5: return "NOTE_5";
  }
  return "?";
}

std::optional<CheckKind> parse_check_kind(std::string_view token) {
  for (auto c : {CheckKind::kCR, CheckKind::kCPSec, CheckKind::kCPSys,
                 CheckKind::kCPAud, CheckKind::kCPApp, CheckKind::kNote1,
                 CheckKind::kNote2, CheckKind::kNote3, CheckKind::kNote4,
                 CheckKind::kNote5}) {
    if (to_string(c) == token) return c;
  }
  return std::nullopt;
}

std::string_view to_string(PostAction a) {
  return a == PostAction::kSR ? "SR" : "ST";
}

std::optional<PostAction> parse_post_action(std::string_view token) {
  if (token == "SR") return PostAction::kSR;
  if (token == "ST") return PostAction::kST;
  return std::nullopt;
}

std::string describe(const TargetRef& t) {
  if (t.kind == TargetKind::kNone) return std::string(to_string(t.kind));
  return std::string(to_string(t.kind)) + ":" + t.id;
}

std::string describe(const AccessRequest& r) {
  std::string out = std::string(to_string(r.type)) + " subject=" +
                    r.subject.str() + " target=" + describe(r.target);
  if (r.params.new_owner) out += " new_owner=" + r.params.new_owner->str();
  if (r.params.exec_file) out += " exec_file=" + r.params.exec_file->str();
  if (r.params.explicit_type) out += " type=" + r.params.explicit_type->str();
  if (r.params.app_right) out += " app_right=" + *r.params.app_right;
  return out;
}

std::string_view to_string(Verdict v) {
  return v == Verdict::kAllow ? "allow" : "deny";
}

std::string describe(const Decision& d) {
  std::string out(to_string(d.verdict));
  if (!d.allowed()) out += " reason=" + d.reason;
  if (!d.post_actions.empty()) {
    out += " post=";
    bool first = true;
    for (auto a : d.post_actions) {
      if (!first) out += ",";
      out += to_string(a);
      first = false;
    }
  }
  if (!d.detail.empty()) out += " (" + d.detail + ")";
  return out;
}

}  // namespace osr
