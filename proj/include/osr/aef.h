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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osr/adf.h"
#include "osr/aci.h"
#include "osr/store.h"
#include "osr/syscalls.h"

// Simulated enforcement facility: the default state, new-subject/object
// derivation rules and event replay against the decision facility.
namespace osr::aef {

// --- default state -----------------------------------------------------------

inline const UserId kRootUser{"root"};
inline const UserId kSysAdminUser{"sysadmin"};
inline const UserId kSecAdminUser{"secadmin"};
inline const UserId kAuditAdminUser{"audadmin"};
inline const std::string kRootDevice = "hd0";

struct BootstrapOptions {
  // Adds the sysadmin/secadmin/audadmin accounts next to root.
  bool admin_users = true;
  // Adds the directory skeleton (/bin, /etc, /home, ...).
  bool filesystem = true;
};

// Fills an empty image with the registry, the five built-in roles, users,
// objects and the system process. Throws kStoreNotEmpty.
void bootstrap_default_state(StoreImage& image, const BootstrapOptions& options = {});
StoreImage bootstrap_default_state(const BootstrapOptions& options = {});

// Processes are not persisted; after a load the system process is recreated
// with the kernel-only role. No-op when it exists. Throws kMissingContext when
// the image has no user to own it.
void ensure_system_process(StoreImage& image, Journal* journal = nullptr);

// --- derivation rules ---------------------------------------------------------

struct NewObjectContext {
  std::optional<ObjectId> parent_dir;
  std::optional<ProcessId> creator;
  std::optional<TypeId> explicit_type;
};

// File, dir, device: parent directory's types; IPC: creating process's
// types; an explicit type replaces either. Throws kMissingContext.
TypeSet derive_new_object_types(const StoreImage& image, ObjectKind kind,
                                const NewObjectContext& context);

// Union of the file's roles and the user's active roles, parents removed.
// Throws kNotExecutable.
RoleSet derive_exec_roles(const StoreImage& image, const UserAci& user,
                          const ObjectAci& exec_file);

struct ProcessTypeContext {
  UserId owner;
  TypeSet inherited;
  std::optional<ObjectId> exec_file;
};
// Owner override when set, else the exec file's types when nonempty, else the
// inherited list.
TypeSet derive_process_types(const StoreImage& image,
                             const ProcessTypeContext& context);

// --- replay ---------------------------------------------------------------

enum class Outcome { kAllowed, kDenied, kUnmediated, kError };
std::string_view to_string(Outcome o);

struct AuditRecord {
  SyscallEvent event;
  Outcome outcome = Outcome::kAllowed;
  std::vector<AccessRequest> requests;
  std::vector<Decision> decisions;
  std::string error;
  // Human-readable state deltas: roles, types, caps, objects.
  std::vector<std::string> changes;
  // Derived-update lines from the model (capability recomputes).
  std::vector<std::string> journal;
  uint64_t generation_before = 0;
  uint64_t generation_after = 0;

  bool denied() const { return outcome == Outcome::kDenied; }
  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

// One JSON object per line; deterministic (no wall clock).
std::string to_jsonl(const AuditRecord& record);

struct AefOptions {
  // Re-validate every invariant after each committed event (slow).
  bool validate_each_event = false;
};

class Aef {
 public:
  explicit Aef(Adf& adf, AefOptions options = {});

  Adf& adf() { return adf_; }

  // Decides every request of the event on a scratch copy; commits the
  // effect only when all are allowed. Errors become records, never throw.
  AuditRecord apply_event(StoreImage& state, const SyscallEvent& event);
  AuditRecord apply_event(AciStore& store, const SyscallEvent& event);

  // Module enable flags and the log switch are restored afterwards, so a
  // replay is a pure function of (initial state, trace).
  std::vector<AuditRecord> replay_trace(StoreImage& state,
                                        std::span<const SyscallEvent> trace);

  bool log_enabled() const { return log_enabled_; }
  void set_log_enabled(bool on) { log_enabled_ = on; }
  void set_sink(std::function<void(const AuditRecord&)> sink) {
    sink_ = std::move(sink);
  }

 private:
  Adf& adf_;
  AefOptions options_;
  std::atomic<bool> log_enabled_{true};
  std::function<void(const AuditRecord&)> sink_;
};

// Login simulation: the system process forks, the child execs /bin/login,
// switches owner to `user` and execs the shell. Runs on a copy of `state` and
// commits only if every step is allowed. Returns the new pid; a denied or
// failed step throws kPermissionDenied with the step's record in the message.
ProcessId login(Aef& aef, StoreImage& state, const UserId& user,
                const std::string& shell = "/bin/sh");
ProcessId login(Aef& aef, AciStore& store, const UserId& user,
                const std::string& shell = "/bin/sh");

struct ReplayResult {
  std::vector<AuditRecord> log;
  StoreImage final_state;
};
ReplayResult replay_trace(Adf& adf, const StoreImage& initial,
                          std::span<const SyscallEvent> trace,
                          AefOptions options = {});

}  // namespace osr::aef
