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

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include "osr/aci.h"

// On-disk store: a protected directory holding `manifest`, `roles.aci`,
// `users.aci` and `objects.aci`. Processes and IPC objects are never
// persisted. Format documented in docs/store-format.md.
namespace osr::persistence {

inline constexpr int kFormatVersion = 1;
inline constexpr std::string_view kManifestFile = "manifest";
inline constexpr std::string_view kRolesFile = "roles.aci";
inline constexpr std::string_view kUsersFile = "users.aci";
inline constexpr std::string_view kObjectsFile = "objects.aci";

// Called before every filesystem step of a flush with a step label such as
// "write:roles.aci" or "rename:manifest". Throwing from it simulates a crash
// at that point; tests use it for fault injection.
using FlushStepHook = std::function<void(std::string_view step)>;

// Serialized file contents, keyed by file name.
struct StoreFiles {
  std::string manifest;
  std::string roles;
  std::string users;
  std::string objects;
};

StoreFiles serialize(const StoreImage& image);

// Parses and validates; `origin` is used in error locations.
StoreImage parse(const StoreFiles& files, const std::string& origin = "store");

// Empty or missing directory yields an empty image at generation 0.
// Throws kParseError (file:line), kInvariantViolation, kIoFailure.
StoreImage load_store(const std::filesystem::path& dir);

// Atomic replace: new files are staged and committed behind a marker, so an
// interrupted flush leaves either the old or the new store loadable. A clean
// image is a no-op. Returns whether anything was written.
bool flush_store(StoreImage& image, const std::filesystem::path& dir,
                 const FlushStepHook& hook = {});

// Recomputes manifest checksums after files were edited by hand.
void seal_store(const std::filesystem::path& dir);

// The image as persisted: processes and IPC objects dropped.
StoreImage persistent_view(const StoreImage& image);

}  // namespace osr::persistence
