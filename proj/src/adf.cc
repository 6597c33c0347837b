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

#include "osr/adf.h"

#include <algorithm>

#include "osr/error.h"
#include "osr/model.h"

namespace osr {
namespace {

std::optional<ObjectKind> object_kind_for(TargetKind k) {
  switch (k) {
    case TargetKind::kFile: return ObjectKind::kFile;
    case TargetKind::kDir: return ObjectKind::kDir;
    case TargetKind::kDev: return ObjectKind::kDevice;
    case TargetKind::kIpc: return ObjectKind::kIpc;
    default: return std::nullopt;
  }
}

const ProcessAci& require_subject(const StoreImage& image, const ProcessId& pid) {
  auto it = image.processes.find(pid);
  if (it == image.processes.end()) {
    throw OsrError(ErrorCode::kSubjectNotFound,
                   "no process '" + pid.str() + "'", pid.str());
  }
  return it->second;
}

const ProcessAci& require_target_process(const StoreImage& image,
                                         const TargetRef& target) {
  if (target.kind != TargetKind::kProcess) {
    throw OsrError(ErrorCode::kTargetNotFound,
                   "note needs a process target, got " + describe(target),
                   target.id);
  }
  auto it = image.processes.find(ProcessId{target.id});
  if (it == image.processes.end()) {
    throw OsrError(ErrorCode::kTargetNotFound,
                   "no process '" + target.id + "'", target.id);
  }
  return it->second;
}

const UserAci& require_user(const StoreImage& image, const UserId& uid) {
  auto it = image.users.find(uid);
  if (it == image.users.end()) {
    throw OsrError(ErrorCode::kNotFound, "no user '" + uid.str() + "'", uid.str());
  }
  return it->second;
}

[[noreturn]] void missing(std::string_view note, std::string_view param) {
  throw OsrError(ErrorCode::kMissingParams,
                 std::string(note) + " needs parameter '" + std::string(param) + "'",
                 std::string(param));
}

std::string pair_text(const std::pair<RoleId, RoleId>& p) {
  return p.first.str() + "<->" + p.second.str();
}

// Subject holds `bit` of `cat` on every type in `types`.
CheckResult holds_on_all(const ProcessAci& subject, RightsCategory cat,
                         size_t bit, const TypeSet& types,
                         std::string_view what) {
  if (types.empty()) {
    return {false, std::string(what) + ": target has no types (misconfigured)"};
  }
  for (const auto& t : types) {
    if (!subject.effective.has(cat, t, bit)) {
      return {false, std::string(what) + ": no right on type '" + t.str() + "'"};
    }
  }
  return {};
}

}  // namespace

StubModule::StubModule(std::string name, Verdict fallback)
    : name_(std::move(name)), fallback_(fallback) {}

Verdict StubModule::evaluate(const StoreImage&, const AccessRequest& request) const {
  if (auto it = overrides_.find(request.type); it != overrides_.end()) {
    return it->second;
  }
  return fallback_;
}

void StubModule::set_verdict(RequestType request, Verdict verdict) {
  overrides_[request] = verdict;
}

Verdict combine_meta(std::span<const ModuleVerdict> verdicts) {
  for (const auto& v : verdicts) {
    if (v.verdict == Verdict::kDeny) return Verdict::kDeny;
  }
  return Verdict::kAllow;
}

RightsCategory category_for(TargetKind kind) {
  switch (kind) {
    case TargetKind::kFile:
    case TargetKind::kDir: return RightsCategory::kFd;
    case TargetKind::kDev: return RightsCategory::kDev;
    case TargetKind::kProcess: return RightsCategory::kProc;
    case TargetKind::kIpc: return RightsCategory::kIpc;
    case TargetKind::kScd: return RightsCategory::kScd;
    case TargetKind::kNone: break;
  }
  throw OsrError(ErrorCode::kUnknownTargetKind, "T_NONE has no rights category");
}

TypeSet target_types(const StoreImage& image, const TargetRef& target) {
  switch (target.kind) {
    case TargetKind::kNone: return {};
    case TargetKind::kProcess: return require_target_process(image, target).rac_types;
    case TargetKind::kScd:
      if (!image.registry.has_scd_type(target.id)) {
        throw OsrError(ErrorCode::kTargetNotFound,
                       "unknown SCD type '" + target.id + "'", target.id);
      }
      return {TypeId{target.id}};
    default: break;
  }
  auto it = image.objects.find(ObjectId{target.id});
  if (it == image.objects.end()) {
    throw OsrError(ErrorCode::kTargetNotFound, "no object '" + target.id + "'",
                   target.id);
  }
  if (it->second.kind != object_kind_for(target.kind)) {
    throw OsrError(ErrorCode::kTargetNotFound,
                   "object '" + target.id + "' is a " +
                       std::string(to_string(it->second.kind)) + ", not " +
                       std::string(to_string(target.kind)),
                   target.id);
  }
  return it->second.rac_types;
}

Adf::Adf(DecisionMatrix matrix, AdfOptions options)
    : matrix_(std::move(matrix)), options_(options) {}

void Adf::add_module(std::shared_ptr<PolicyModule> module) {
  modules_.push_back(std::move(module));
}

std::shared_ptr<PolicyModule> Adf::module(std::string_view name) const {
  for (const auto& m : modules_) {
    if (m->name() == name) return m;
  }
  return nullptr;
}

std::vector<std::string> Adf::module_names() const {
  std::vector<std::string> out{std::string(kRoleModuleName)};
  for (const auto& m : modules_) out.push_back(m->name());
  return out;
}

CheckResult Adf::check_ordinary(const StoreImage& image, const ProcessAci& subject,
                                const TargetRef& target, RequestType request) const {
  const RightsCategory cat = category_for(target.kind);
  const size_t bit = image.registry.require_bit(cat, right_name(request));
  return holds_on_all(subject, cat, bit, target_types(image, target),
                      std::string(to_string(cat)) + " " +
                          std::string(right_name(request)));
}

CheckResult Adf::check_privilege(const StoreImage& image, const ProcessAci& subject,
                                 PrivilegeClass privilege_class,
                                 std::string_view bit_name) const {
  const size_t bit = image.registry.require_bit(privilege_class, bit_name);
  if (subject.effective.has(privilege_class, bit)) return {};
  return {false, "no " + std::string(to_string(privilege_class)) + " privilege '" +
                     std::string(bit_name) + "'"};
}

CheckResult Adf::evaluate_note(const StoreImage& image, CheckKind note,
                               const AccessRequest& request) const {
  const auto& reg = image.registry;
  const ProcessAci& subject = require_subject(image, request.subject);
  switch (note) {
    case CheckKind::kNote1: {
      if (!request.params.new_owner) missing("NOTE_1", "new_owner");
      const ProcessAci& proc = require_target_process(image, request.target);
      const UserAci& next = require_user(image, *request.params.new_owner);
      const UserAci& prev = require_user(image, proc.owner);
      if (auto hit = model::find_static_conflict_between(
              image.roles, prev.max_roles, next.max_roles)) {
        return {false, "static conflict between users " + prev.id.str() + " and " +
                           next.id.str() + ": " + pair_text(*hit)};
      }
      if (proc.exec_file) {
        if (auto obj = image.objects.find(*proc.exec_file); obj != image.objects.end()) {
          if (auto hit = model::find_static_conflict_between(
                  image.roles, obj->second.exec_file_roles, next.max_roles)) {
            return {false, "static conflict between executable " +
                               obj->first.str() + " and user " + next.id.str() +
                               ": " + pair_text(*hit)};
          }
        }
      }
      return {};
    }
    case CheckKind::kNote2: {
      const ProcessAci& child = require_target_process(image, request.target);
      return holds_on_all(subject, RightsCategory::kProc,
                          reg.require_bit(RightsCategory::kProc, "CREATE"),
                          child.rac_types, "proc CREATE");
    }
    case CheckKind::kNote3: {
      const size_t bit = reg.require_bit(RightsCategory::kFd, "CREATE");
      auto in_dir = holds_on_all(subject, RightsCategory::kFd, bit,
                                 target_types(image, request.target),
                                 "fd CREATE in directory");
      if (!in_dir) return in_dir;
      TypeId type = request.params.explicit_type
                        ? *request.params.explicit_type
                        : require_user(image, subject.owner).default_object_type;
      return holds_on_all(subject, RightsCategory::kFd, bit, {type},
                          "fd CREATE of new object type");
    }
    case CheckKind::kNote4: {
      const size_t bit = reg.require_bit(RightsCategory::kIpc, "CREATE");
      TypeId type = request.params.explicit_type
                        ? *request.params.explicit_type
                        : require_user(image, subject.owner).default_object_type;
      return holds_on_all(subject, RightsCategory::kIpc, bit, {type},
                          "ipc CREATE of designated type");
    }
    case CheckKind::kNote5: {
      if (!request.params.exec_file) missing("NOTE_5", "exec_file");
      const ProcessAci& proc = require_target_process(image, request.target);
      const ObjectAci& file = image.object(*request.params.exec_file);
      if (file.kind != ObjectKind::kFile) {
        throw OsrError(ErrorCode::kNotExecutable,
                       "'" + file.id.str() + "' is not a file", file.id.str());
      }
      const UserAci& owner = require_user(image, proc.owner);
      if (auto hit = model::find_static_conflict_between(
              image.roles, file.exec_file_roles, owner.max_roles)) {
        return {false, "executable " + file.id.str() + " conflicts with user " +
                           owner.id.str() + ": " + pair_text(*hit)};
      }
      return {};
    }
    default:
      break;
  }
  throw OsrError(ErrorCode::kUnknownRequest,
                 std::string(to_string(note)) + " is not a note");
}

CheckResult Adf::run_check(const StoreImage& image, const ProcessAci& subject,
                           CheckKind check, const AccessRequest& request) const {
  switch (check) {
    case CheckKind::kCR:
      return check_ordinary(image, subject, request.target, request.type);
    case CheckKind::kCPApp:
      if (!request.params.app_right) missing("CP_app", "app_right");
      return check_privilege(image, subject, PrivilegeClass::kApp,
                             *request.params.app_right);
    case CheckKind::kCPSec:
    case CheckKind::kCPSys:
    case CheckKind::kCPAud: {
      auto b = matrix_.privilege_binding(request.type);
      if (!b) {
        throw OsrError(ErrorCode::kUnregisteredRight,
                       "no privilege bound to " + std::string(to_string(request.type)),
                       std::string(to_string(request.type)));
      }
      return check_privilege(image, subject, b->privilege_class, b->bit);
    }
    default:
      return evaluate_note(image, check, request);
  }
}

Decision Adf::decide(const StoreImage& image, const AccessRequest& request) const {
  const ProcessAci& subject = require_subject(image, request.subject);
  // Resolves the target up front so a dangling target is an error, not a
  // verdict, regardless of which checks the cell lists.
  target_types(image, request.target);

  Decision d;
  const CheckSpec spec = matrix_.lookup(request.type, request.target.kind);
  Verdict osr = Verdict::kAllow;
  if (!spec.defined) {
    if (options_.strict_matrix) {
      osr = Verdict::kDeny;
      d.reason = "UNDEFINED_CELL";
      d.detail = "blank matrix cell in strict mode";
    }
  } else {
    for (CheckKind c : spec.checks) {
      CheckResult r = run_check(image, subject, c, request);
      if (!r) {
        osr = Verdict::kDeny;
        d.reason = std::string(to_string(c));
        d.detail = std::move(r.detail);
        break;
      }
    }
  }

  d.module_verdicts.push_back({std::string(kRoleModuleName), osr});
  for (const auto& m : modules_) {
    if (!m->enabled()) continue;
    Verdict v = m->evaluate(image, request);
    d.module_verdicts.push_back({m->name(), v});
    if (v == Verdict::kDeny && d.reason.empty()) {
      d.reason = "MODULE:" + m->name();
    }
  }
  d.verdict = combine_meta(d.module_verdicts);
  if (d.allowed()) d.post_actions = spec.post_actions;
  return d;
}

}  // namespace osr
