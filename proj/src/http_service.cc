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

#include "osr/http_service.h"

#include <httplib.h>

#include <thread>
#include <vector>

#include "osr/aef.h"
#include "osr/error.h"

namespace osr::http {
namespace {

using Json = admin::Json;

constexpr std::string_view kPrefix = "/api/v1";

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  size_t i = 0;
  while (i < path.size()) {
    size_t j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    if (j > i) parts.emplace_back(path.substr(i, j - i));
    i = j + 1;
  }
  return parts;
}

Reply json_reply(int status, const Json& body) { return {status, body.dump()}; }

Reply error_reply(ErrorCode code, const std::string& message) {
  admin::AdminResponse r;
  r.error = code;
  r.message = message;
  return json_reply(status_for(code), r.to_json());
}

Json parse_body(const Request& req) {
  if (req.body.empty()) return Json::object();
  Json j = Json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw OsrError(ErrorCode::kBadArguments, "request body must be a JSON object");
  }
  return j;
}

std::string caller_of(const Request& req, Json& body) {
  if (auto it = req.query.find("as"); it != req.query.end()) return it->second;
  if (body.contains("caller")) {
    if (!body.at("caller").is_string()) {
      throw OsrError(ErrorCode::kBadArguments, "'caller' must be a string");
    }
    std::string c = body.at("caller").get<std::string>();
    body.erase("caller");
    return c;
  }
  if (auto it = req.headers.find("X-OSR-Caller"); it != req.headers.end()) {
    return it->second;
  }
  throw OsrError(ErrorCode::kBadArguments,
                 "caller required: '?as=PID', body 'caller' or X-OSR-Caller header");
}

// Query parameters other than `as` become payload fields.
Json query_payload(const Request& req) {
  Json p = Json::object();
  for (const auto& [k, v] : req.query) {
    if (k != "as") p[k] = v;
  }
  return p;
}

const std::map<std::string, std::string, std::less<>> kAttrKinds = {
    {"user", "user"}, {"proc", "proc"},   {"process", "proc"}, {"file_dir", "file_dir"},
    {"ipc", "ipc"},   {"dev", "dev"},     {"device", "dev"},
};

const std::map<std::string, std::string, std::less<>> kPostVerbs = {
    {"activate", "rfsos_osr_activate_role"},
    {"whatif", "what_if"},
    {"what-if", "what_if"},
    {"check-app-right", "rfsos_osr_check_app_right"},
    {"switch-module", "switch_module"},
    {"switch-log", "switch_log"},
};

const std::map<std::string, std::string, std::less<>> kListVerbs = {
    {"roles", "list_roles"},         {"users", "list_users"},
    {"processes", "list_processes"}, {"objects", "list_objects"},
    {"registry", "get_registry"},
};

}  // namespace

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPermissionDenied:
      return 403;
    case ErrorCode::kNotFound:
    case ErrorCode::kSubjectNotFound:
    case ErrorCode::kTargetNotFound:
    case ErrorCode::kUnknownVerb:
      return 404;
    case ErrorCode::kBadArguments:
    case ErrorCode::kParseError:
    case ErrorCode::kTypeMismatch:
    case ErrorCode::kUnknownAttribute:
    case ErrorCode::kUnknownRequest:
    case ErrorCode::kUnknownTargetKind:
    case ErrorCode::kUnregisteredRight:
    case ErrorCode::kMissingParams:
    case ErrorCode::kTraceParseError:
    case ErrorCode::kUnknownSyscall:
    case ErrorCode::kUnmediatedSyscall:
      return 400;
    case ErrorCode::kIoFailure:
    case ErrorCode::kInvariantViolation:
      return 500;
    default:
      return 409;
  }
}

struct Service::Server {
  httplib::Server http;
  std::thread thread;
};

Service::Service(admin::AdminService& admin) : admin_(admin) {}

Service::~Service() { stop(); }

Reply Service::handle(const Request& req) {
  try {
    if (req.path.rfind(kPrefix, 0) != 0) {
      throw OsrError(ErrorCode::kNotFound, "no route " + req.path);
    }
    const auto parts = split_path(std::string_view(req.path).substr(kPrefix.size()));
    const std::string& m = req.method;
    Json body = (m == "POST" || m == "PUT") ? parse_body(req) : Json::object();

    auto run = [&](const std::string& verb, Json payload) {
      admin::AdminCommand cmd{verb, ProcessId{caller_of(req, body)}, std::move(payload)};
      admin::AdminResponse r = admin_.execute(cmd);
      return json_reply(r.ok ? 200 : status_for(*r.error), r.to_json());
    };
    // The caller is removed from `body` before it becomes the payload.
    auto body_payload = [&]() {
      Json copy = body;
      copy.erase("caller");
      return copy;
    };

    if (parts.size() == 1 && parts[0] == "status" && m == "GET") {
      auto img = admin_.store().snapshot();
      Json mods = Json::object();
      for (const auto& name : admin_.adf().module_names()) {
        auto mod = admin_.adf().module(name);
        mods[name] = mod ? mod->enabled() : true;  // the role module is always on
      }
      Json s{{"generation", img->generation},
             {"flushed_generation", img->flushed_generation},
             {"dirty", img->dirty()},
             {"roles", img->roles.size()},
             {"users", img->users.size()},
             {"processes", img->processes.size()},
             {"objects", img->objects.size()},
             {"types", img->registry.object_types.size()},
             {"modules", std::move(mods)},
             {"log_enabled", admin_.aef().log_enabled()},
             {"strict_matrix", admin_.adf().options().strict_matrix}};
      return json_reply(200, s);
    }
    if (parts.size() == 1 && parts[0] == "verbs" && m == "GET") {
      Json arr = Json::array();
      for (const auto& v : admin::verb_table()) {
        arr.push_back({{"verb", std::string(v.name)},
                       {"gate", std::string(to_string(v.gate))},
                       {"mutates_store", v.mutates_store},
                       {"usage", std::string(v.usage)}});
      }
      return json_reply(200, arr);
    }
    if (parts.size() == 1 && parts[0] == "command" && m == "POST") {
      if (!body.contains("verb") || !body.at("verb").is_string()) {
        throw OsrError(ErrorCode::kBadArguments, "missing field 'verb'");
      }
      Json payload = body.value("payload", Json::object());
      return run(body.at("verb").get<std::string>(), std::move(payload));
    }
    if (parts.size() == 1 && parts[0] == "login" && m == "POST") {
      if (!body.contains("user") || !body.at("user").is_string()) {
        throw OsrError(ErrorCode::kBadArguments, "missing field 'user'");
      }
      const UserId user{body.at("user").get<std::string>()};
      ProcessId pid = aef::login(admin_.aef(), admin_.store(), user);
      return json_reply(200, Json{{"pid", pid.str()},
                                  {"user", user.str()},
                                  {"generation", admin_.store().generation()}});
    }
    if (parts.size() == 1 && parts[0] == "events" && m == "POST") {
      aef::SyscallEvent e;
      e.seq = ++event_seq_;
      if (!body.contains("pid") || !body.contains("syscall")) {
        throw OsrError(ErrorCode::kBadArguments, "event needs 'pid' and 'syscall'");
      }
      e.process = ProcessId{body.at("pid").get<std::string>()};
      e.name = body.at("syscall").get<std::string>();
      if (body.contains("args")) {
        for (const auto& [k, v] : body.at("args").items()) {
          e.args[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
      }
      aef::AuditRecord rec = admin_.aef().apply_event(admin_.store(), e);
      return json_reply(200, Json::parse(aef::to_jsonl(rec)));
    }
    if (parts.size() == 2 && parts[0] == "attr") {
      auto kind = kAttrKinds.find(parts[1]);
      if (kind == kAttrKinds.end()) {
        throw OsrError(ErrorCode::kNotFound, "no attribute route for '" + parts[1] + "'");
      }
      if (m == "GET") return run("rfsos_get_" + kind->second + "_attr", query_payload(req));
      if (m == "PUT") return run("rfsos_set_" + kind->second + "_attr", body_payload());
    }
    if (!parts.empty() && parts[0] == "roles") {
      if (parts.size() == 1 && m == "POST") return run("rfsos_osr_add_role", body_payload());
      if (parts.size() == 2) {
        Json payload = m == "GET" || m == "DELETE" ? query_payload(req) : body_payload();
        payload["id"] = parts[1];
        if (m == "GET") return run("rfsos_osr_get_role_attr", std::move(payload));
        if (m == "PUT") return run("rfsos_osr_set_role_attr", std::move(payload));
        if (m == "DELETE") return run("rfsos_osr_del_role", std::move(payload));
      }
      if (parts.size() == 3 && parts[2] == "delete" && m == "POST") {
        return run("rfsos_osr_del_role", Json{{"id", parts[1]}});
      }
    }
    if (parts.size() == 1 && m == "GET") {
      if (auto v = kListVerbs.find(parts[0]); v != kListVerbs.end()) {
        return run(v->second, Json::object());
      }
    }
    if (parts.size() == 1 && m == "POST") {
      if (auto v = kPostVerbs.find(parts[0]); v != kPostVerbs.end()) {
        return run(v->second, body_payload());
      }
    }
    throw OsrError(ErrorCode::kNotFound, "no route " + m + " " + req.path);
  } catch (const OsrError& e) {
    return error_reply(e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_reply(ErrorCode::kBadArguments, std::string("BadArguments: ") + e.what());
  }
}

namespace {

void install(httplib::Server& server, Service& service) {
  auto forward = [&service](const httplib::Request& in, httplib::Response& out) {
    Request req;
    req.method = in.method;
    req.path = in.path;
    req.body = in.body;
    for (const auto& [k, v] : in.params) req.query[k] = v;
    for (const auto& [k, v] : in.headers) req.headers[k] = v;
    Reply r = service.handle(req);
    out.status = r.status;
    out.set_content(r.body, "application/json");
  };
  const std::string pattern = std::string(kPrefix) + "/.*";
  server.Get(pattern, forward);
  server.Post(pattern, forward);
  server.Put(pattern, forward);
  server.Delete(pattern, forward);
}

}  // namespace

int Service::start(const std::string& host, int port) {
  stop();
  server_ = std::make_unique<Server>();
  install(server_->http, *this);
  int bound = port;
  if (port == 0) {
    bound = server_->http.bind_to_any_port(host);
  } else if (!server_->http.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    server_.reset();
    throw OsrError(ErrorCode::kIoFailure,
                   "cannot bind " + host + ":" + std::to_string(port));
  }
  server_->thread = std::thread([s = server_.get()] { s->http.listen_after_bind(); });
  server_->http.wait_until_ready();
  return bound;
}

void Service::listen(const std::string& host, int port) {
  httplib::Server server;
  install(server, *this);
  if (!server.listen(host, port)) {
    throw OsrError(ErrorCode::kIoFailure,
                   "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void Service::stop() {
  if (!server_) return;
  server_->http.stop();
  if (server_->thread.joinable()) server_->thread.join();
  server_.reset();
}

}  // namespace osr::http
