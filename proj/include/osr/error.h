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

#include <stdexcept>
#include <string>
#include <string_view>

namespace osr {

enum class ErrorCode {
  kDuplicateId,
  kDanglingReference,
  kCycleDetected,
  kContainmentViolated,
  kConflictAsymmetry,
  kNotFound,
  kBuiltinRoleImmutable,
  kStaticConflict,
  kDynamicConflict,
  kNotInMaxRoles,
  kTrustedRoleRestricted,
  kParseError,
  kInvariantViolation,
  kIoFailure,
  kUnknownAttribute,
  kTypeMismatch,
  kUnknownRequest,
  kUnknownTargetKind,
  kUnregisteredRight,
  kMissingParams,
  kSubjectNotFound,
  kTargetNotFound,
  kStoreNotEmpty,
  kUnmediatedSyscall,
  kUnknownSyscall,
  kBadArguments,
  kMissingContext,
  kNotExecutable,
  kTraceParseError,
  kPermissionDenied,
  kUnknownVerb,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as an OsrError. `entity` names the
// offending id (role, user, file, line) when one exists.
class OsrError : public std::runtime_error {
 public:
  OsrError(ErrorCode code, const std::string& message, std::string entity = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        entity_(std::move(entity)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& entity() const noexcept { return entity_; }

 private:
  ErrorCode code_;
  std::string entity_;
};

}  // namespace osr
