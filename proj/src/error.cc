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

#include "osr/error.h"

namespace osr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kContainmentViolated: return "ContainmentViolated";
    case ErrorCode::kConflictAsymmetry: return "ConflictAsymmetry";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kBuiltinRoleImmutable: return "BuiltinRoleImmutable";
    case ErrorCode::kStaticConflict: return "StaticConflict";
    case ErrorCode::kDynamicConflict: return "DynamicConflict";
    case ErrorCode::kNotInMaxRoles: return "NotInMaxRoles";
    case ErrorCode::kTrustedRoleRestricted: return "TrustedRoleRestricted";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kUnknownRequest: return "UnknownRequest";
    case ErrorCode::kUnknownTargetKind: return "UnknownTargetKind";
    case ErrorCode::kUnregisteredRight: return "UnregisteredRight";
    case ErrorCode::kMissingParams: return "MissingParams";
    case ErrorCode::kSubjectNotFound: return "SubjectNotFound";
    case ErrorCode::kTargetNotFound: return "TargetNotFound";
    case ErrorCode::kStoreNotEmpty: return "StoreNotEmpty";
    case ErrorCode::kUnmediatedSyscall: return "UnmediatedSyscall";
    case ErrorCode::kUnknownSyscall: return "UnknownSyscall";
    case ErrorCode::kBadArguments: return "BadArguments";
    case ErrorCode::kMissingContext: return "MissingContext";
    case ErrorCode::kNotExecutable: return "NotExecutable";
    case ErrorCode::kTraceParseError: return "TraceParseError";
    case ErrorCode::kPermissionDenied: return "PermissionDenied";
    case ErrorCode::kUnknownVerb: return "UnknownVerb";
  }
  return "Unknown";
}

}  // namespace osr
