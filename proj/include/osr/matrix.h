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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "osr/request.h"
#include "osr/rights.h"

namespace osr {

struct CheckSpec {
  std::set<CheckKind> checks;
  std::set<PostAction> post_actions;
  bool defined = false;

  friend bool operator==(const CheckSpec&, const CheckSpec&) = default;
};
std::string describe(const CheckSpec& spec);

// Privilege bit consulted by a CP_* check for a request.
struct PrivilegeBinding {
  PrivilegeClass privilege_class = PrivilegeClass::kSec;
  std::string bit;
  friend bool operator==(const PrivilegeBinding&, const PrivilegeBinding&) = default;
};

// Data-encoded access decision matrix. Rows whose only entry is a privilege
// check apply to every target kind, including requests without a target.
class DecisionMatrix {
 public:
  // The shipped transcription.
  static const DecisionMatrix& builtin();
  // Parses the structured-text matrix format; throws kParseError with line.
  static DecisionMatrix parse(std::string_view text,
                              const std::string& origin = "matrix");
  static std::string_view builtin_text();

  // Throws kUnknownRequest / kUnknownTargetKind for bad tokens.
  CheckSpec lookup(std::string_view request_token,
                   std::string_view target_token) const;
  CheckSpec lookup(RequestType request, TargetKind target) const;

  // Privilege bit for a CP_* check; CP_app takes the bit from the request
  // parameters and has no binding.
  std::optional<PrivilegeBinding> privilege_binding(RequestType request) const;

  // One line per (request, column) over the six matrix columns.
  std::string dump() const;

  // Checks that every CR cell and CP binding names a registered right.
  // Throws kUnregisteredRight.
  void validate_against(const RightsRegistry& registry) const;

 private:
  std::map<std::pair<RequestType, TargetKind>, CheckSpec> cells_;
  std::map<RequestType, CheckSpec> any_target_;
  std::map<RequestType, PrivilegeBinding> bindings_;
};

}  // namespace osr
