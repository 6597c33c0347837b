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

#include <atomic>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "osr/aci.h"
#include "osr/matrix.h"
#include "osr/request.h"

namespace osr {

struct CheckResult {
  bool passed = true;
  std::string detail;
  explicit operator bool() const noexcept { return passed; }
};

// A policy module consulted by the meta-policy next to the role policy.
class PolicyModule {
 public:
  virtual ~PolicyModule() = default;
  virtual std::string name() const = 0;
  virtual Verdict evaluate(const StoreImage& image,
                           const AccessRequest& request) const = 0;

  bool enabled() const noexcept { return enabled_.load(); }
  void set_enabled(bool on) noexcept { enabled_.store(on); }

 private:
  std::atomic<bool> enabled_{true};
};

// Stand-in for the MAC, integrity and audit modules: returns a configured
// verdict, optionally per request type.
class StubModule final : public PolicyModule {
 public:
  explicit StubModule(std::string name, Verdict fallback = Verdict::kAllow);

  std::string name() const override { return name_; }
  Verdict evaluate(const StoreImage& image,
                   const AccessRequest& request) const override;

  // Not thread-safe against concurrent evaluate; configure before use.
  void set_verdict(RequestType request, Verdict verdict);

 private:
  std::string name_;
  Verdict fallback_;
  std::map<RequestType, Verdict> overrides_;
};

// Deny-overrides: allow iff every module allows. An empty list allows.
Verdict combine_meta(std::span<const ModuleVerdict> verdicts);

inline constexpr std::string_view kRoleModuleName = "OSR";

struct AdfOptions {
  // Blank matrix cells deny instead of abstaining.
  bool strict_matrix = false;
};

// Access decision facility. `decide` is a pure read of the image and the
// request, safe to call concurrently.
class Adf {
 public:
  explicit Adf(DecisionMatrix matrix = DecisionMatrix::builtin(),
               AdfOptions options = {});

  const DecisionMatrix& matrix() const { return matrix_; }
  const AdfOptions& options() const { return options_; }
  void set_strict_matrix(bool strict) { options_.strict_matrix = strict; }

  void add_module(std::shared_ptr<PolicyModule> module);
  std::shared_ptr<PolicyModule> module(std::string_view name) const;
  std::vector<std::string> module_names() const;

  // Throws kUnknownRequest / kSubjectNotFound / kTargetNotFound /
  // kMissingParams / kUnregisteredRight.
  Decision decide(const StoreImage& image, const AccessRequest& request) const;

  // CR: the subject's effective rights must hold the request's right on every
  // type of the target. A target without types is denied as misconfigured.
  CheckResult check_ordinary(const StoreImage& image, const ProcessAci& subject,
                             const TargetRef& target, RequestType request) const;

  // CP_*: the union of the class's privilege vector over active roles holds
  // `bit_name`.
  CheckResult check_privilege(const StoreImage& image, const ProcessAci& subject,
                              PrivilegeClass privilege_class,
                              std::string_view bit_name) const;

  CheckResult evaluate_note(const StoreImage& image, CheckKind note,
                            const AccessRequest& request) const;

 private:
  CheckResult run_check(const StoreImage& image, const ProcessAci& subject,
                        CheckKind check, const AccessRequest& request) const;

  DecisionMatrix matrix_;
  AdfOptions options_;
  std::vector<std::shared_ptr<PolicyModule>> modules_;
};

// Types of the target as seen by ordinary checks. Throws kTargetNotFound.
TypeSet target_types(const StoreImage& image, const TargetRef& target);
RightsCategory category_for(TargetKind kind);

}  // namespace osr
