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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "osr/aci.h"
#include "osr/attributes.h"
#include "osr/model.h"

namespace osr {

// Sole custodian of the ACI. Readers take immutable snapshots; writers are
// serialized and each successful mutation publishes a new image with the
// generation advanced by exactly one.
class AciStore {
 public:
  explicit AciStore(StoreImage initial = {});

  AciStore(const AciStore&) = delete;
  AciStore& operator=(const AciStore&) = delete;

  std::shared_ptr<const StoreImage> snapshot() const;
  uint64_t generation() const { return snapshot()->generation; }

  // Runs `fn(image, journal)` on a private copy of the current image. If it
  // returns normally the copy is published (generation + 1) and the journal
  // lines are kept; if it throws nothing changes and the exception propagates.
  template <typename Fn>
  auto mutate(Fn&& fn) {
    std::lock_guard writer(write_mutex_);
    auto next = std::make_shared<StoreImage>(*current());
    Journal scratch;
    if constexpr (std::is_void_v<decltype(fn(*next, scratch))>) {
      fn(*next, scratch);
      commit(std::move(next), std::move(scratch));
    } else {
      auto result = fn(*next, scratch);
      commit(std::move(next), std::move(scratch));
      return result;
    }
  }

  // Like mutate, but `fn` may decline by returning false, in which case
  // nothing is published and the generation stays put.
  bool mutate_if(const std::function<bool(StoreImage&, Journal&)>& fn);

  RoleId add_role(RoleRecord record);
  void delete_role(const RoleId& role);
  void set_child_roles(const RoleId& role, RoleSet children);
  void assign_max_roles(const Principal& principal, RoleSet roles);
  void activate_roles(const Principal& principal, RoleSet roles);

  AttrValue get_attr(const EntityRef& entity, std::string_view name) const;
  void set_attr(const EntityRef& entity, std::string_view name,
                const AttrValue& value);

  // Writes the current snapshot if dirty and marks it clean. Returns whether
  // anything was written.
  bool flush(const std::filesystem::path& dir);
  static std::unique_ptr<AciStore> load(const std::filesystem::path& dir);

  // Lines journaled by mutations since the last call.
  std::vector<std::string> take_journal();

 private:
  std::shared_ptr<const StoreImage> current() const;
  void commit(std::shared_ptr<StoreImage> next, Journal journal);
  void mark_flushed(uint64_t generation);

  mutable std::mutex snapshot_mutex_;
  std::mutex write_mutex_;
  std::shared_ptr<const StoreImage> image_;
  Journal journal_;
  std::mutex journal_mutex_;
};

// Flushes a store periodically from snapshots; never holds the writer lock
// while writing. Flushes once more on stop.
class PeriodicFlusher {
 public:
  static constexpr std::chrono::milliseconds kDefaultInterval{5000};

  PeriodicFlusher(AciStore& store, std::filesystem::path dir,
                  std::chrono::milliseconds interval = kDefaultInterval);
  ~PeriodicFlusher();

  void stop();
  uint64_t flush_count() const;

 private:
  void run();

  AciStore& store_;
  std::filesystem::path dir_;
  std::chrono::milliseconds interval_;
  mutable std::mutex mutex_;
  std::condition_variable wake_;
  bool stopping_ = false;
  uint64_t flushes_ = 0;
  std::thread worker_;
};

}  // namespace osr
