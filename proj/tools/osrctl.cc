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

// osrctl: command line front end for the OSR store, simulator and admin verbs.

#include <CLI11.hpp>

#include <unistd.h>

#include <algorithm>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>

#include "osr/admin.h"
#include "osr/aef.h"
#include "osr/error.h"
#include "osr/http_service.h"
#include "osr/matrix.h"
#include "osr/persistence.h"
#include "osr/syscalls.h"
#include "osr/trace.h"

namespace {

using osr::admin::Json;

constexpr int kExitError = 1;
constexpr int kExitDenied = 3;

osr::Adf make_adf(bool strict, const std::string& matrix_file) {
  osr::DecisionMatrix matrix = osr::DecisionMatrix::builtin();
  if (!matrix_file.empty()) {
    std::ifstream in(matrix_file);
    if (!in) throw osr::OsrError(osr::ErrorCode::kIoFailure, "cannot read " + matrix_file);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    matrix = osr::DecisionMatrix::parse(text, matrix_file);
  }
  osr::Adf adf(std::move(matrix), {strict});
  for (const char* name : {"MAC", "IAC", "AUDIT"}) {
    adf.add_module(std::make_shared<osr::StubModule>(name));
  }
  return adf;
}

// Loads the store directory, bootstrapping an empty one when asked, and
// recreates the system process.
std::unique_ptr<osr::AciStore> open_store(const std::string& dir, bool bootstrap_if_empty) {
  osr::StoreImage image = osr::persistence::load_store(dir);
  if (image.empty()) {
    if (!bootstrap_if_empty) {
      throw osr::OsrError(osr::ErrorCode::kNotFound,
                          "store '" + dir + "' is empty; run 'osrctl bootstrap' first", dir);
    }
    osr::aef::bootstrap_default_state(image);
  } else {
    osr::aef::ensure_system_process(image);
  }
  return std::make_unique<osr::AciStore>(std::move(image));
}

// key=value -> payload field. Values that parse as JSON arrays, objects or
// booleans are taken as JSON; everything else stays a string.
void add_field(Json& payload, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw osr::OsrError(osr::ErrorCode::kBadArguments, "expected key=value, got '" + kv + "'");
  }
  const std::string key = kv.substr(0, eq);
  const std::string value = kv.substr(eq + 1);
  if (!value.empty() && (value[0] == '[' || value[0] == '{' || value == "true" ||
                         value == "false")) {
    Json parsed = Json::parse(value, nullptr, false);
    if (!parsed.is_discarded()) {
      payload[key] = std::move(parsed);
      return;
    }
  }
  payload[key] = value;
}

struct AdminArgs {
  std::string store = "osr-store";
  std::string as;
  std::string login;
  std::string json;
  std::vector<std::string> fields;
  bool strict = false;
  bool no_flush = false;
};

int run_admin(const std::string& verb, const AdminArgs& a) {
  auto store = open_store(a.store, false);
  osr::Adf adf = make_adf(a.strict, "");
  osr::aef::Aef aef(adf);
  osr::admin::AdminService service(*store, adf, aef);

  std::string caller = a.as;
  if (!a.login.empty()) {
    osr::ProcessId pid = osr::aef::login(aef, *store, osr::UserId{a.login});
    if (caller.empty()) caller = pid.str();
  }
  if (caller.empty()) caller = store->snapshot()->system_process.str();

  Json payload = a.json.empty() ? Json::object() : Json::parse(a.json);
  for (const auto& f : a.fields) add_field(payload, f);

  osr::admin::AdminResponse r = service.execute({verb, osr::ProcessId{caller}, payload});
  std::cout << r.to_json().dump(2) << "\n";
  const auto* info = osr::admin::find_verb(verb);
  if (r.ok && info && info->mutates_store && !a.no_flush) store->flush(a.store);
  if (r.ok) return 0;
  return r.error == osr::ErrorCode::kPermissionDenied ? kExitDenied : kExitError;
}

// pause() returns once a handled signal arrives; shutdown happens in main.
void on_signal(int) {}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OSR role-based access control: store, simulator and administration"};
  app.require_subcommand(1);

  // bootstrap
  std::string store_dir = "osr-store";
  bool no_admin_users = false;
  bool no_filesystem = false;
  auto* bootstrap = app.add_subcommand("bootstrap", "Write the default state to a new store");
  bootstrap->add_option("--store", store_dir, "Store directory")->capture_default_str();
  bootstrap->add_flag("--no-admin-users", no_admin_users, "Only create root");
  bootstrap->add_flag("--no-filesystem", no_filesystem, "Skip the directory skeleton");

  // replay
  std::string trace_file;
  std::string matrix_file;
  std::string log_file;
  bool strict = false;
  bool commit = false;
  bool fresh = false;
  auto* replay = app.add_subcommand("replay", "Replay a syscall trace, one JSON line per event");
  replay->add_option("--store", store_dir, "Store directory")->capture_default_str();
  replay->add_option("--trace", trace_file, "Trace file")->required();
  replay->add_option("--matrix", matrix_file, "Decision matrix text (default: builtin)");
  replay->add_option("--out", log_file, "Write the log here instead of stdout");
  replay->add_flag("--strict-matrix", strict, "Blank matrix cells deny");
  replay->add_flag("--commit", commit, "Flush the final state back to the store");
  replay->add_flag("--fresh", fresh, "Start from the default state, ignore --store");

  // admin verbs, one subcommand each
  AdminArgs admin_args;
  std::vector<std::pair<CLI::App*, std::string>> verb_commands;
  for (const auto& v : osr::admin::verb_table()) {
    std::string help = "Admin verb (gate " + std::string(osr::to_string(v.gate)) + ")";
    if (!v.usage.empty()) help += "; fields: " + std::string(v.usage);
    auto* sub = app.add_subcommand(std::string(v.name), help);
    sub->add_option("--store", admin_args.store, "Store directory")->capture_default_str();
    sub->add_option("--as", admin_args.as, "Calling process id");
    sub->add_option("--login", admin_args.login,
                    "Log this user in first and call as the new process");
    sub->add_option("--json", admin_args.json, "Payload as a JSON object");
    sub->add_option("fields", admin_args.fields, "Payload fields as key=value");
    sub->add_flag("--strict-matrix", admin_args.strict, "Blank matrix cells deny");
    sub->add_flag("--no-flush", admin_args.no_flush, "Do not write changes back");
    verb_commands.emplace_back(sub, std::string(v.name));
  }

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  int flush_ms = static_cast<int>(osr::PeriodicFlusher::kDefaultInterval.count());
  bool bootstrap_if_empty = false;
  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON admin service");
  serve->add_option("--store", store_dir, "Store directory")->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--flush-interval-ms", flush_ms)->capture_default_str();
  serve->add_flag("--bootstrap-if-empty", bootstrap_if_empty);
  serve->add_flag("--strict-matrix", strict, "Blank matrix cells deny");

  auto* matrix = app.add_subcommand("matrix", "Print the decision matrix, one cell per line");
  matrix->add_option("--matrix", matrix_file, "Matrix text to parse instead of the builtin");
  auto* syscalls = app.add_subcommand("syscalls", "Print the request to syscall table");
  auto* seal = app.add_subcommand("seal", "Recompute manifest checksums after a hand edit");
  seal->add_option("--store", store_dir, "Store directory")->capture_default_str();
  auto* verbs = app.add_subcommand("verbs", "List admin verbs and their gates");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bootstrap) {
      osr::StoreImage existing = osr::persistence::load_store(store_dir);
      if (!existing.empty()) {
        throw osr::OsrError(osr::ErrorCode::kStoreNotEmpty,
                            "store '" + store_dir + "' already holds data", store_dir);
      }
      osr::StoreImage image =
          osr::aef::bootstrap_default_state({!no_admin_users, !no_filesystem});
      image.generation = std::max<uint64_t>(image.generation, 1);
      osr::persistence::flush_store(image, store_dir);
      std::cout << "bootstrapped " << store_dir << ": " << image.roles.size() << " roles, "
                << image.users.size() << " users, " << image.objects.size() << " objects\n";
      return 0;
    }
    if (*replay) {
      osr::StoreImage initial;
      if (fresh) {
        initial = osr::aef::bootstrap_default_state();
      } else {
        initial = *open_store(store_dir, false)->snapshot();
      }
      osr::Adf adf = make_adf(strict, matrix_file);
      auto trace = osr::aef::load_trace(trace_file);
      auto result = osr::aef::replay_trace(adf, initial, trace);
      std::ofstream file;
      if (!log_file.empty()) file.open(log_file);
      std::ostream& out = log_file.empty() ? std::cout : file;
      size_t denied = 0;
      for (const auto& rec : result.log) {
        out << osr::aef::to_jsonl(rec) << "\n";
        denied += rec.denied() ? 1 : 0;
      }
      if (commit && !fresh) osr::persistence::flush_store(result.final_state, store_dir);
      std::cerr << result.log.size() << " events, " << denied << " denied\n";
      return 0;
    }
    for (const auto& [sub, name] : verb_commands) {
      if (*sub) return run_admin(name, admin_args);
    }
    if (*serve) {
      auto store = open_store(store_dir, bootstrap_if_empty);
      osr::Adf adf = make_adf(strict, "");
      osr::aef::Aef aef(adf);
      osr::admin::AdminService admin(*store, adf, aef);
      osr::PeriodicFlusher flusher(*store, store_dir, std::chrono::milliseconds(flush_ms));
      osr::http::Service service(admin);
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      const int bound = service.start(host, port);
      std::cerr << "serving on http://" << host << ":" << bound << "/api/v1\n";
      pause();
      service.stop();
      flusher.stop();
      return 0;
    }
    if (*matrix) {
      if (matrix_file.empty()) {
        std::cout << osr::DecisionMatrix::builtin().dump();
      } else {
        std::cout << make_adf(false, matrix_file).matrix().dump();
      }
      return 0;
    }
    if (*syscalls) {
      for (const auto& row : osr::aef::syscall_table()) {
        std::cout << osr::to_string(row.request);
        for (auto s : row.syscalls) std::cout << " " << s;
        std::cout << "\n";
      }
      return 0;
    }
    if (*seal) {
      osr::persistence::seal_store(store_dir);
      std::cout << "sealed " << store_dir << "\n";
      return 0;
    }
    if (*verbs) {
      for (const auto& v : osr::admin::verb_table()) {
        std::cout << v.name << " " << osr::to_string(v.gate)
                  << (v.mutates_store ? " mutating" : "") << "\n";
      }
      return 0;
    }
  } catch (const osr::OsrError& e) {
    std::cerr << "osrctl: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "osrctl: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
