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

#include "osr/trace.h"

#include <fstream>
#include <sstream>

#include "osr/codec.h"
#include "osr/error.h"

namespace osr::aef {

std::vector<SyscallEvent> parse_trace(std::string_view text,
                                      const std::string& origin) {
  std::vector<SyscallEvent> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  auto fail = [&](const std::string& msg) {
    throw OsrError(ErrorCode::kTraceParseError,
                   origin + ":" + std::to_string(number) + ": " + msg,
                   origin + ":" + std::to_string(number));
  };
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream words(line);
    std::string seq_text;
    if (!(words >> seq_text) || seq_text.front() == '#') continue;

    SyscallEvent e;
    if (seq_text.find_first_not_of("0123456789") != std::string::npos) {
      fail("sequence number must be a non-negative integer, got '" + seq_text + "'");
    }
    try {
      e.seq = std::stoull(seq_text);
    } catch (const std::exception&) {
      fail("sequence number out of range");
    }
    if (!out.empty() && e.seq <= out.back().seq) {
      fail("sequence number " + seq_text + " does not increase");
    }
    std::string pid;
    if (!(words >> pid)) fail("missing process id");
    e.process = ProcessId{pid};
    if (!(words >> e.name)) fail("missing syscall name");

    std::string token;
    while (words >> token) {
      auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0) {
        fail("expected key=value, got '" + token + "'");
      }
      auto value = codec::percent_decode(std::string_view(token).substr(eq + 1));
      if (!value) fail("bad percent-encoding in '" + token + "'");
      if (!e.args.emplace(token.substr(0, eq), *value).second) {
        fail("duplicate argument '" + token.substr(0, eq) + "'");
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<SyscallEvent> load_trace(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw OsrError(ErrorCode::kIoFailure, "cannot read trace " + file.string(),
                   file.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_trace(text.str(), file.string());
}

std::string format_event(const SyscallEvent& e) {
  std::string out = std::to_string(e.seq) + " " + e.process.str() + " " + e.name;
  for (const auto& [k, v] : e.args) out += " " + k + "=" + codec::percent_encode(v);
  return out;
}

}  // namespace osr::aef
