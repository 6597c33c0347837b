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
#include <string>

#include "osr/admin.h"

// HTTP/JSON front end over AdminService. Routes are documented in
// docs/http-api.md; every admin route goes through AdminService::execute.
namespace osr::http {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;
  std::string body;
};

struct Reply {
  int status = 200;
  std::string body;
};

int status_for(ErrorCode code);

class Service {
 public:
  explicit Service(admin::AdminService& admin);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Routing without sockets; listen() forwards every request here.
  Reply handle(const Request& request);

  // Binds and serves on a background thread. Port 0 picks a free port.
  // Returns the bound port; throws kIoFailure when binding fails.
  int start(const std::string& host, int port);
  // Blocks serving on the calling thread.
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Server;
  admin::AdminService& admin_;
  std::unique_ptr<Server> server_;
  std::atomic<uint64_t> event_seq_{0};
};

}  // namespace osr::http
