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

#include "osr/matrix.h"

#include <sstream>

#include "osr/error.h"

namespace osr {
namespace {

// Row format: `row <REQUEST> [<COLUMN>=<entry>,...]... | [ANY=<entry>,...]`
// where an entry is a check token (CR, CP_*, NOTE_n) or a post action (SR,
// ST). A row with no cells is blank. `bind <REQUEST> <class> <bit>` names the
// privilege bit behind a CP_sec/CP_sys/CP_aud row.
constexpr std::string_view kBuiltinText = R"(# osr-rbac decision matrix, format 1
# columns: T_FILE T_DIR T_DEV T_PROCESS T_IPC T_SCD; ANY covers every target
# kind including requests without a target.

row R_ADD_TO_KERNEL           T_FILE=CR
row R_ALTER                   T_IPC=CR
row R_APPEND_OPEN             T_FILE=CR T_DEV=CR T_IPC=CR
row R_READ_WRITE_OPEN
row R_CHANGE_GROUP            T_FILE=CR T_DIR=CR T_IPC=CR
row R_CHANGE_OWNER            T_FILE=CR T_DIR=CR T_PROCESS=NOTE_1,SR,ST T_IPC=CR
row R_CHDIR                   T_DIR=CR
row R_READ
row R_SEARCH
row R_WRITE
row R_CLONE                   T_PROCESS=NOTE_2,SR,ST
row R_CREATE                  T_DIR=NOTE_3,ST T_IPC=NOTE_4,ST
row R_DELETE                  T_FILE=CR T_DIR=CR T_IPC=CR
row R_EXECUTE                 T_FILE=CR T_PROCESS=NOTE_5,SR,ST
row R_GET_PERMISSIONS_DATA
row R_GET_STATUS_DATA         T_SCD=CR
row R_LINK_HARD               T_FILE=CR
row R_TRUNCATE
row R_MODIFY_ACCESS_DATA      T_FILE=CR T_DIR=CR
row R_RENAME
row R_MODIFY_ATTRIBUTE        ANY=CP_sec
row R_MODIFY_PERMISSIONS_DATA T_FILE=CR T_DIR=CR T_IPC=CR T_SCD=CR
row R_MODIFY_SYSTEM_DATA      T_SCD=CR
row R_MOUNT                   T_DIR=CR T_DEV=CR
row R_READ_ATTRIBUTE          ANY=CP_sec
row R_READ_OPEN               T_FILE=CR T_DIR=CR T_DEV=CR T_IPC=CR
row R_REMOVE_FROM_KERNEL
row R_SEND_SIGNAL             T_PROCESS=CR
row R_TRACE
row R_SHUTDOWN
row R_SWITCH_LOG
row R_SWITCH_MODULE
row R_TERMINATE               T_PROCESS=CR
row R_WRITE_OPEN              T_FILE=CR T_DEV=CR T_IPC=CR
row R_UMOUNT                  T_DIR=CR T_DEV=CR

row R_AUDIT_STOP              ANY=CP_aud
row R_AUDIT_SAVE_CONFIG       ANY=CP_aud
row R_AUDIT_RELOAD_CONFIG     ANY=CP_aud
row R_AUDIT_WORK              ANY=CP_aud
row R_AUDIT_START             ANY=CP_aud

row R_MAC_ADD_TO_KERNEL       ANY=CP_sys
row R_MAC_MOUNT               ANY=CP_sys
row R_MAC_SHUTDOWN            ANY=CP_sys
row R_MAC_REMOVE_FROM_KERNEL  ANY=CP_sys
row R_MAC_UMOUNT              ANY=CP_sys

row R_IAC_MODIFY_ATTRIBUTE        ANY=CP_sec
row R_IAC_READ_ATTRIBUTE          ANY=CP_sec
row R_MAC_GET_STATUS_DATA         ANY=CP_sec
row R_MAC_MODIFY_ATTRIBUTE        ANY=CP_sec
row R_MAC_MODIFY_PERMISSIONS_DATA ANY=CP_sec
row R_MAC_READ_ATTRIBUTE          ANY=CP_sec
row R_MAC_SWITCH_LOG              ANY=CP_sec
row R_MAC_SWITCH_MODULE           ANY=CP_sec

row R_APPLICATION             ANY=CP_app

# privilege bits behind CP rows
bind R_MODIFY_ATTRIBUTE            sec MODIFY_ATTRIBUTE
bind R_READ_ATTRIBUTE              sec READ_ATTRIBUTE
bind R_IAC_MODIFY_ATTRIBUTE        sec IAC_MODIFY_ATTRIBUTE
bind R_IAC_READ_ATTRIBUTE          sec IAC_READ_ATTRIBUTE
bind R_MAC_GET_STATUS_DATA         sec MAC_GET_STATUS_DATA
bind R_MAC_MODIFY_ATTRIBUTE        sec MAC_MODIFY_ATTRIBUTE
bind R_MAC_MODIFY_PERMISSIONS_DATA sec MAC_MODIFY_PERMISSIONS_DATA
bind R_MAC_READ_ATTRIBUTE          sec MAC_READ_ATTRIBUTE
bind R_MAC_SWITCH_LOG              sec MAC_SWITCH_LOG
bind R_MAC_SWITCH_MODULE           sec MAC_SWITCH_MODULE
bind R_AUDIT_STOP                  aud AUDIT_STOP
bind R_AUDIT_SAVE_CONFIG           aud AUDIT_SAVE_CONFIG
bind R_AUDIT_RELOAD_CONFIG         aud AUDIT_RELOAD_CONFIG
bind R_AUDIT_WORK                  aud AUDIT_WORK
bind R_AUDIT_START                 aud AUDIT_START
bind R_MAC_ADD_TO_KERNEL           sys module_admin
bind R_MAC_REMOVE_FROM_KERNEL      sys module_admin
bind R_MAC_MOUNT                   sys mount_admin
bind R_MAC_UMOUNT                  sys mount_admin
bind R_MAC_SHUTDOWN                sys reboot
)";

std::optional<PrivilegeClass> privilege_class_of(CheckKind c) {
  switch (c) {
    case CheckKind::kCPSec: return PrivilegeClass::kSec;
    case CheckKind::kCPSys: return PrivilegeClass::kSys;
    case CheckKind::kCPAud: return PrivilegeClass::kAud;
    case CheckKind::kCPApp: return PrivilegeClass::kApp;
    default: return std::nullopt;
  }
}

RightsCategory column_category(TargetKind k) {
  switch (k) {
    case TargetKind::kFile:
    case TargetKind::kDir: return RightsCategory::kFd;
    case TargetKind::kDev: return RightsCategory::kDev;
    case TargetKind::kProcess: return RightsCategory::kProc;
    case TargetKind::kIpc: return RightsCategory::kIpc;
    case TargetKind::kScd: return RightsCategory::kScd;
    case TargetKind::kNone: break;
  }
  throw OsrError(ErrorCode::kUnknownTargetKind, "no rights category for T_NONE");
}

}  // namespace

std::string describe(const CheckSpec& spec) {
  if (!spec.defined) return "-";
  std::string out;
  for (auto c : spec.checks) {
    if (!out.empty()) out += ",";
    out += to_string(c);
  }
  for (auto a : spec.post_actions) {
    if (!out.empty()) out += ",";
    out += to_string(a);
  }
  return out;
}

std::string_view DecisionMatrix::builtin_text() { return kBuiltinText; }

const DecisionMatrix& DecisionMatrix::builtin() {
  static const DecisionMatrix m = parse(kBuiltinText, "builtin matrix");
  return m;
}

DecisionMatrix DecisionMatrix::parse(std::string_view text,
                                     const std::string& origin) {
  DecisionMatrix m;
  std::set<RequestType> rows_seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw OsrError(ErrorCode::kParseError,
                   origin + ":" + std::to_string(number) + ": " + msg,
                   origin + ":" + std::to_string(number));
  };

  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;

    std::string req_token;
    if (!(words >> req_token)) fail("missing request token");
    auto req = parse_request_type(req_token);
    if (!req) fail("unknown request '" + req_token + "'");

    if (keyword == "bind") {
      std::string cls, bit, extra;
      if (!(words >> cls >> bit) || (words >> extra)) {
        fail("bind needs <request> <class> <bit>");
      }
      auto pc = parse_privilege_class(cls);
      if (!pc || *pc == PrivilegeClass::kApp) fail("bad privilege class '" + cls + "'");
      if (!m.bindings_.emplace(*req, PrivilegeBinding{*pc, bit}).second) {
        fail("duplicate binding for " + req_token);
      }
      continue;
    }
    if (keyword != "row") fail("unknown keyword '" + keyword + "'");
    if (!rows_seen.insert(*req).second) fail("duplicate row " + req_token);

    std::string cell;
    bool has_any = false, has_columns = false;
    while (words >> cell) {
      auto eq = cell.find('=');
      if (eq == std::string::npos) fail("expected COLUMN=entries, got '" + cell + "'");
      std::string column = cell.substr(0, eq);
      CheckSpec spec;
      spec.defined = true;
      std::istringstream entries(cell.substr(eq + 1));
      std::string entry;
      while (std::getline(entries, entry, ',')) {
        if (auto c = parse_check_kind(entry)) {
          spec.checks.insert(*c);
        } else if (auto a = parse_post_action(entry)) {
          spec.post_actions.insert(*a);
        } else {
          fail("unknown entry '" + entry + "'");
        }
      }
      if (spec.checks.empty() && spec.post_actions.empty()) fail("empty cell " + column);
      if (column == "ANY") {
        if (has_any) fail("duplicate ANY cell");
        has_any = true;
        m.any_target_[*req] = std::move(spec);
        continue;
      }
      auto kind = parse_target_kind(column);
      if (!kind || *kind == TargetKind::kNone) fail("unknown column '" + column + "'");
      if (!m.cells_.emplace(std::make_pair(*req, *kind), std::move(spec)).second) {
        fail("duplicate cell " + column);
      }
      has_columns = true;
    }
    if (has_any && has_columns) fail("ANY cannot be combined with column cells");
  }

  // Every CP_sec/sys/aud check needs a bit to consult.
  auto needs_binding = [&](RequestType r, const CheckSpec& s) {
    for (auto c : s.checks) {
      auto pc = privilege_class_of(c);
      if (!pc || *pc == PrivilegeClass::kApp) continue;
      auto b = m.bindings_.find(r);
      if (b == m.bindings_.end() || b->second.privilege_class != *pc) {
        throw OsrError(ErrorCode::kParseError,
                       origin + ": " + std::string(to_string(r)) + " uses " +
                           std::string(to_string(c)) + " without a matching bind",
                       std::string(to_string(r)));
      }
    }
  };
  for (const auto& [key, spec] : m.cells_) needs_binding(key.first, spec);
  for (const auto& [r, spec] : m.any_target_) needs_binding(r, spec);
  return m;
}

CheckSpec DecisionMatrix::lookup(std::string_view request_token,
                                 std::string_view target_token) const {
  auto req = parse_request_type(request_token);
  if (!req) {
    throw OsrError(ErrorCode::kUnknownRequest,
                   "unknown request '" + std::string(request_token) + "'",
                   std::string(request_token));
  }
  auto target = parse_target_kind(target_token);
  if (!target) {
    throw OsrError(ErrorCode::kUnknownTargetKind,
                   "unknown target kind '" + std::string(target_token) + "'",
                   std::string(target_token));
  }
  return lookup(*req, *target);
}

CheckSpec DecisionMatrix::lookup(RequestType request, TargetKind target) const {
  if (auto it = any_target_.find(request); it != any_target_.end()) {
    return it->second;
  }
  if (auto it = cells_.find({request, target}); it != cells_.end()) {
    return it->second;
  }
  return CheckSpec{};
}

std::optional<PrivilegeBinding> DecisionMatrix::privilege_binding(
    RequestType request) const {
  if (auto it = bindings_.find(request); it != bindings_.end()) return it->second;
  return std::nullopt;
}

std::string DecisionMatrix::dump() const {
  std::string out;
  for (auto r : all_request_types()) {
    for (auto k : kMatrixColumns) {
      out += std::string(to_string(r)) + " " + std::string(to_string(k)) + " " +
             describe(lookup(r, k)) + "\n";
    }
  }
  return out;
}

void DecisionMatrix::validate_against(const RightsRegistry& registry) const {
  for (const auto& [key, spec] : cells_) {
    if (spec.checks.contains(CheckKind::kCR)) {
      registry.require_bit(column_category(key.second), right_name(key.first));
    }
  }
  for (const auto& [r, b] : bindings_) {
    registry.require_bit(b.privilege_class, b.bit);
  }
}

}  // namespace osr
