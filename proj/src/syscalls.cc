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

#include "osr/syscalls.h"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "osr/error.h"

namespace osr::aef {
namespace {

using R = RequestType;

const std::vector<SyscallRow> kTable = {
    {R::kAddToKernel, {"create_module", "init_module"}},
    {R::kAlter, {"ipc", "msgctl", "shmctl"}},
    {R::kAppendOpen, {"open", "msgsnd"}},
    {R::kChangeGroup,
     {"chgrp", "fchgrp", "setgid", "setfsuid", "setregid", "setgroups"}},
    {R::kChangeOwner, {"chown", "fchown", "setuid", "setsuid", "setreuid"}},
    {R::kChdir, {"chdir", "fchdir"}},
    {R::kClone, {"fork", "clone"}},
    {R::kCreate,
     {"create", "ipc", "socketcall", "mkdir", "mknod", "symlink", "open",
      "msgget", "shmget"}},
    {R::kDelete, {"ipc", "socketcall", "rmdir", "unlink", "msgctl"}},
    {R::kExecute, {"exec_ve"}},
    {R::kGetPermissionsData, {"access"}},
    {R::kGetStatusData,
     {"stat", "fstat", "lstat", "new_stat", "new_fstat", "new_lstat", "statfs",
      "fstatfs", "msgctl", "shmctl"}},
    {R::kLinkHard, {"link"}},
    {R::kModifyAccessData, {"utime"}},
    {R::kModifyAttribute, {"rslx_set_attr"}},
    {R::kModifyPermissionsData, {"chmod", "fchmod", "ioperm", "iopl"}},
    {R::kModifySystemData,
     {"adjtimes", "stime", "settimeofday", "sethostname", "setdomainname",
      "setrlimit", "swapon", "swapoff", "syslog"}},
    {R::kMount, {"mount"}},
    {R::kRead, {"readdir", "readlink", "getdent"}},
    {R::kReadAttribute, {"rslx_get_attr"}},
    {R::kReadOpen, {"ipc", "open", "msgrcv", "shmatt"}},
    {R::kReadWriteOpen, {"ipc", "socketcall", "open", "shmatt"}},
    {R::kRemoveFromKernel, {"delete_module"}},
    {R::kRename, {"rename"}},
    {R::kSearch, {}},
    {R::kSendSignal, {"kill"}},
    {R::kShutdown, {"reboot"}},
    {R::kSwitchLog, {"rslx_adf_log_switch"}},
    {R::kSwitchModule, {"rslx_switch"}},
    {R::kTerminate, {"exit"}},
    {R::kTrace, {"ptrace"}},
    {R::kTruncate, {"open", "truncate", "ftruncate"}},
    {R::kUmount, {"umount"}},
    {R::kWrite, {"rename"}},
    {R::kWriteOpen, {"open"}},
    {R::kApplication, {"rslx_rac_check_app_right"}},
};

constexpr std::string_view kUnmediated[] = {
    "read",   "write",    "close",        "lseek",       "getpid",
    "getppid", "getuid",  "geteuid",      "getgid",      "getegid",
    "brk",    "mmap",     "munmap",       "mprotect",    "dup",
    "dup2",   "pipe",     "nanosleep",    "gettimeofday", "time",
    "select", "poll",     "fcntl",        "sched_yield", "wait4",
    "waitpid", "uname",   "getcwd",       "sync",        "fsync",
};

constexpr std::pair<std::string_view, std::string_view> kAliases[] = {
    {"creat", "create"},     {"execve", "exec_ve"},   {"getdents", "getdent"},
    {"shmat", "shmatt"},     {"adjtimex", "adjtimes"}, {"newstat", "new_stat"},
    {"newfstat", "new_fstat"}, {"newlstat", "new_lstat"}, {"lpc", "ipc"},
    {"setresuid", "setreuid"},
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  // "Fork()" as written in tables.
  if (out.size() > 2 && out.ends_with("()")) out.resize(out.size() - 2);
  return out;
}

bool known(std::string_view name) {
  for (const auto& row : kTable) {
    if (std::find(row.syscalls.begin(), row.syscalls.end(), name) !=
        row.syscalls.end()) {
      return true;
    }
  }
  return false;
}

[[noreturn]] void bad_args(const SyscallEvent& e, const std::string& msg) {
  throw OsrError(ErrorCode::kBadArguments,
                 "event " + std::to_string(e.seq) + " (" + e.name + "): " + msg,
                 e.name);
}

const ObjectAci& existing_object(const StoreImage& image, const std::string& id) {
  auto it = image.objects.find(ObjectId{id});
  if (it == image.objects.end()) {
    throw OsrError(ErrorCode::kTargetNotFound, "no object '" + id + "'", id);
  }
  return it->second;
}

TargetRef object_target(const StoreImage& image, const std::string& id) {
  return {target_kind_of(existing_object(image, id).kind), id};
}

TargetRef object_target_of_kind(const StoreImage& image, const std::string& id,
                                ObjectKind kind, const SyscallEvent& e) {
  const auto& o = existing_object(image, id);
  if (o.kind != kind) {
    bad_args(e, "'" + id + "' is a " + std::string(to_string(o.kind)) +
                    ", expected " + std::string(to_string(kind)));
  }
  return {target_kind_of(kind), id};
}

TargetRef parent_dir_target(const StoreImage& image, const SyscallEvent& e,
                            const std::string& path) {
  auto parent = parent_path(path);
  if (!parent) bad_args(e, "'" + path + "' has no parent directory");
  return object_target_of_kind(image, *parent, ObjectKind::kDir, e);
}

std::vector<std::string> split_flags(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == '|') {
      if (!cur.empty()) out.push_back(lower(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(lower(cur));
  return out;
}

std::optional<std::string> scd_for(std::string_view name) {
  static constexpr std::pair<std::string_view, std::string_view> kScd[] = {
      {"adjtimes", "time"},     {"stime", "time"},
      {"settimeofday", "time"}, {"sethostname", "host_id"},
      {"setdomainname", "host_id"}, {"setrlimit", "rlimit"},
      {"swapon", "swap"},       {"swapoff", "swap"},
      {"syslog", "syslog"},     {"ioperm", "ioports"},
      {"iopl", "ioports"},
  };
  for (const auto& [call, scd] : kScd) {
    if (call == name) return std::string(scd);
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> SyscallEvent::arg(std::string_view key) const {
  auto it = args.find(std::string(key));
  if (it == args.end()) return std::nullopt;
  return it->second;
}

const std::string& SyscallEvent::require(std::string_view key) const {
  auto it = args.find(std::string(key));
  if (it == args.end() || it->second.empty()) {
    bad_args(*this, "missing argument '" + std::string(key) + "'");
  }
  return it->second;
}

std::optional<std::string> canonical_syscall(std::string_view name) {
  std::string n = lower(name);
  for (const auto& [alias, canon] : kAliases) {
    if (alias == n) return std::string(canon);
  }
  if (known(n) || is_unmediated(n)) return n;
  return std::nullopt;
}

const std::vector<SyscallRow>& syscall_table() { return kTable; }

std::span<const std::string_view> unmediated_syscalls() { return kUnmediated; }

bool is_unmediated(std::string_view name) {
  return std::find(std::begin(kUnmediated), std::end(kUnmediated), name) !=
         std::end(kUnmediated);
}

TargetKind target_kind_of(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::kFile: return TargetKind::kFile;
    case ObjectKind::kDir: return TargetKind::kDir;
    case ObjectKind::kDevice: return TargetKind::kDev;
    case ObjectKind::kIpc: return TargetKind::kIpc;
  }
  return TargetKind::kNone;
}

std::optional<std::string> parent_path(std::string_view path) {
  if (path.empty() || path == "/") return std::nullopt;
  while (path.size() > 1 && path.back() == '/') path.remove_suffix(1);
  auto slash = path.rfind('/');
  if (slash == std::string_view::npos) return std::nullopt;
  if (slash == 0) return std::string("/");
  return std::string(path.substr(0, slash));
}

ProcessId next_process_id(const StoreImage& image) {
  uint64_t max = 0;
  for (const auto& [pid, p] : image.processes) {
    uint64_t v = 0;
    const auto& s = pid.str();
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size()) max = std::max(max, v);
  }
  return ProcessId{std::to_string(max + 1)};
}

std::vector<AccessRequest> map_syscall_event(const StoreImage& image,
                                             const SyscallEvent& e) {
  auto canon = canonical_syscall(e.name);
  if (!canon) {
    throw OsrError(ErrorCode::kUnknownSyscall, "unknown syscall '" + e.name + "'",
                   e.name);
  }
  const std::string& n = *canon;
  if (is_unmediated(n)) {
    throw OsrError(ErrorCode::kUnmediatedSyscall,
                   "'" + n + "' is declared unmediated", n);
  }

  std::vector<AccessRequest> out;
  auto add = [&](RequestType r, TargetRef t, RequestParams p = {}) {
    out.push_back({r, e.process, std::move(t), std::move(p)});
  };
  auto path_obj = [&] { return object_target(image, e.require("path")); };
  auto self = [&] { return TargetRef{TargetKind::kProcess, e.process.str()}; };
  auto pid_target = [&] {
    auto pid = e.arg("pid");
    return TargetRef{TargetKind::kProcess, pid && !pid->empty() ? *pid : e.process.str()};
  };
  auto ipc_target = [&] { return TargetRef{TargetKind::kIpc, e.require("id")}; };
  auto explicit_type = [&] {
    RequestParams p;
    if (auto t = e.arg("type"); t && !t->empty()) p.explicit_type = TypeId{*t};
    return p;
  };
  auto ctl_request = [&](bool stat_allowed, bool rmid_allowed) {
    std::string cmd = lower(e.arg("cmd").value_or(""));
    if (stat_allowed && cmd == "stat") return R::kGetStatusData;
    if (rmid_allowed && cmd == "rmid") return R::kDelete;
    return R::kAlter;
  };

  if (n == "create_module" || n == "init_module") {
    add(R::kAddToKernel,
        object_target_of_kind(image, e.require("path"), ObjectKind::kFile, e));
  } else if (n == "delete_module") {
    add(R::kRemoveFromKernel, {});
  } else if (n == "ipc") {
    std::string call = lower(e.require("call"));
    if (call == "msgget" || call == "shmget" || call == "semget") {
      add(R::kCreate, ipc_target(), explicit_type());
    } else if (call == "msgctl" || call == "shmctl" || call == "semctl") {
      add(ctl_request(false, true), ipc_target());
    } else if (call == "msgrcv") {
      add(R::kReadOpen, ipc_target());
    } else if (call == "shmat") {
      add(lower(e.arg("mode").value_or("rw")) == "ro" ? R::kReadOpen
                                                      : R::kReadWriteOpen,
          ipc_target());
    } else if (call == "msgsnd" || call == "semop") {
      add(R::kReadWriteOpen, ipc_target());
    } else {
      bad_args(e, "unknown ipc call '" + call + "'");
    }
  } else if (n == "msgctl") {
    add(ctl_request(true, true), ipc_target());
  } else if (n == "shmctl") {
    add(ctl_request(true, false), ipc_target());
  } else if (n == "msgsnd") {
    add(R::kAppendOpen, ipc_target());
  } else if (n == "msgrcv") {
    add(R::kReadOpen, ipc_target());
  } else if (n == "msgget" || n == "shmget") {
    add(R::kCreate, ipc_target(), explicit_type());
  } else if (n == "shmatt") {
    add(lower(e.arg("mode").value_or("rw")) == "ro" ? R::kReadOpen
                                                    : R::kReadWriteOpen,
        ipc_target());
  } else if (n == "socketcall") {
    std::string call = lower(e.require("call"));
    if (call == "socket") {
      add(R::kCreate, ipc_target(), explicit_type());
    } else if (call == "shutdown") {
      add(R::kDelete, ipc_target());
    } else if (call == "connect" || call == "accept" || call == "bind" ||
               call == "listen" || call == "send" || call == "recv" ||
               call == "sendto" || call == "recvfrom") {
      add(R::kReadWriteOpen, ipc_target());
    } else {
      bad_args(e, "unknown socket call '" + call + "'");
    }
  } else if (n == "chgrp" || n == "fchgrp") {
    add(R::kChangeGroup, path_obj());
  } else if (n == "setgid" || n == "setfsuid" || n == "setregid" ||
             n == "setgroups") {
    add(R::kChangeGroup, self());
  } else if (n == "chown" || n == "fchown") {
    add(R::kChangeOwner, path_obj());
  } else if (n == "setuid" || n == "setsuid" || n == "setreuid") {
    RequestParams p;
    p.new_owner = UserId{e.require("user")};
    add(R::kChangeOwner, self(), std::move(p));
  } else if (n == "chdir" || n == "fchdir") {
    add(R::kChdir, object_target_of_kind(image, e.require("path"), ObjectKind::kDir, e));
  } else if (n == "fork" || n == "clone") {
    ProcessId child{e.arg("child").value_or("")};
    if (child.empty()) child = next_process_id(image);
    if (image.processes.contains(child)) bad_args(e, "child pid " + child.str() + " in use");
    add(R::kClone, {TargetKind::kProcess, child.str()});
  } else if (n == "create" || n == "mkdir" || n == "mknod" || n == "symlink") {
    const std::string& path = e.require("path");
    if (image.objects.contains(ObjectId{path})) bad_args(e, "'" + path + "' exists");
    add(R::kCreate, parent_dir_target(image, e, path), explicit_type());
  } else if (n == "open") {
    const std::string& path = e.require("path");
    auto flags = split_flags(e.arg("flags").value_or("rdonly"));
    auto has = [&](std::string_view f) {
      return std::find(flags.begin(), flags.end(), f) != flags.end();
    };
    const bool exists = image.objects.contains(ObjectId{path});
    TargetRef target{TargetKind::kFile, path};
    if (!exists) {
      if (!has("creat")) {
        throw OsrError(ErrorCode::kTargetNotFound, "no object '" + path + "'", path);
      }
      add(R::kCreate, parent_dir_target(image, e, path), explicit_type());
    } else {
      target = object_target(image, path);
    }
    if (has("rdwr")) {
      add(R::kReadWriteOpen, target);
    } else if (has("wronly")) {
      add(has("append") ? R::kAppendOpen : R::kWriteOpen, target);
    } else {
      add(R::kReadOpen, target);
    }
    if (has("trunc")) add(R::kTruncate, target);
  } else if (n == "rmdir") {
    add(R::kDelete, object_target_of_kind(image, e.require("path"), ObjectKind::kDir, e));
  } else if (n == "unlink") {
    add(R::kDelete, path_obj());
  } else if (n == "exec_ve") {
    const std::string& path = e.require("path");
    add(R::kExecute, object_target_of_kind(image, path, ObjectKind::kFile, e));
    RequestParams p;
    p.exec_file = ObjectId{path};
    add(R::kExecute, self(), std::move(p));
  } else if (n == "access") {
    add(R::kGetPermissionsData, path_obj());
  } else if (n == "stat" || n == "fstat" || n == "lstat" || n == "new_stat" ||
             n == "new_fstat" || n == "new_lstat" || n == "statfs" ||
             n == "fstatfs") {
    add(R::kGetStatusData, path_obj());
  } else if (n == "link") {
    add(R::kLinkHard, object_target_of_kind(image, e.require("path"), ObjectKind::kFile, e));
  } else if (n == "utime") {
    add(R::kModifyAccessData, path_obj());
  } else if (n == "rslx_set_attr") {
    add(R::kModifyAttribute, {});
  } else if (n == "rslx_get_attr") {
    add(R::kReadAttribute, {});
  } else if (n == "chmod" || n == "fchmod") {
    add(R::kModifyPermissionsData, path_obj());
  } else if (n == "ioperm" || n == "iopl") {
    add(R::kModifyPermissionsData, {TargetKind::kScd, *scd_for(n)});
  } else if (auto scd = scd_for(n)) {
    add(R::kModifySystemData, {TargetKind::kScd, *scd});
  } else if (n == "mount" || n == "umount") {
    R r = n == "mount" ? R::kMount : R::kUmount;
    add(r, object_target_of_kind(image, e.require("path"), ObjectKind::kDir, e));
    add(r, object_target_of_kind(image, e.require("dev"), ObjectKind::kDevice, e));
  } else if (n == "readdir" || n == "getdent") {
    add(R::kRead, object_target_of_kind(image, e.require("path"), ObjectKind::kDir, e));
  } else if (n == "readlink") {
    add(R::kRead, path_obj());
  } else if (n == "rename") {
    const std::string& to = e.require("to");
    if (image.objects.contains(ObjectId{to})) bad_args(e, "'" + to + "' exists");
    parent_dir_target(image, e, to);
    auto src = path_obj();
    add(R::kRename, src);
    add(R::kWrite, src);
  } else if (n == "kill") {
    add(R::kSendSignal, pid_target());
  } else if (n == "reboot") {
    add(R::kShutdown, {});
  } else if (n == "rslx_adf_log_switch") {
    add(R::kSwitchLog, {});
  } else if (n == "rslx_switch") {
    add(R::kSwitchModule, {});
  } else if (n == "exit") {
    add(R::kTerminate, self());
  } else if (n == "ptrace") {
    add(R::kTrace, pid_target());
  } else if (n == "truncate" || n == "ftruncate") {
    add(R::kTruncate, object_target_of_kind(image, e.require("path"), ObjectKind::kFile, e));
  } else if (n == "rslx_rac_check_app_right") {
    RequestParams p;
    p.app_right = e.require("right");
    add(R::kApplication, {}, std::move(p));
  } else {
    throw OsrError(ErrorCode::kUnknownSyscall, "no mapping for '" + n + "'", n);
  }
  return out;
}

}  // namespace osr::aef
