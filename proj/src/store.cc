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

#include "osr/store.h"

#include "osr/persistence.h"

namespace osr {

AciStore::AciStore(StoreImage initial)
    : image_(std::make_shared<const StoreImage>(std::move(initial))) {}

std::shared_ptr<const StoreImage> AciStore::snapshot() const { return current(); }

std::shared_ptr<const StoreImage> AciStore::current() const {
  std::lock_guard lock(snapshot_mutex_);
  return image_;
}

void AciStore::commit(std::shared_ptr<StoreImage> next, Journal journal) {
  next->generation = current()->generation + 1;
  {
    std::lock_guard lock(snapshot_mutex_);
    image_ = std::move(next);
  }
  if (!journal.lines.empty()) {
    std::lock_guard lock(journal_mutex_);
    for (auto& l : journal.lines) journal_.add(std::move(l));
  }
}

void AciStore::mark_flushed(uint64_t generation) {
  std::lock_guard writer(write_mutex_);
  auto cur = current();
  if (cur->flushed_generation >= generation) return;
  auto next = std::make_shared<StoreImage>(*cur);
  next->flushed_generation = std::min(generation, next->generation);
  std::lock_guard lock(snapshot_mutex_);
  image_ = std::move(next);
}

bool AciStore::mutate_if(const std::function<bool(StoreImage&, Journal&)>& fn) {
  std::lock_guard writer(write_mutex_);
  auto next = std::make_shared<StoreImage>(*current());
  Journal scratch;
  if (!fn(*next, scratch)) return false;
  commit(std::move(next), std::move(scratch));
  return true;
}

RoleId AciStore::add_role(RoleRecord record) {
  return mutate([&](StoreImage& img, Journal& j) {
    return model::add_role(img, std::move(record), &j);
  });
}

void AciStore::delete_role(const RoleId& role) {
  mutate([&](StoreImage& img, Journal& j) { model::delete_role(img, role, &j); });
}

void AciStore::set_child_roles(const RoleId& role, RoleSet children) {
  mutate([&](StoreImage& img, Journal& j) {
    model::set_child_roles(img, role, std::move(children), &j);
  });
}

void AciStore::assign_max_roles(const Principal& principal, RoleSet roles) {
  mutate([&](StoreImage& img, Journal& j) {
    model::assign_max_roles(img, principal, std::move(roles), &j);
  });
}

void AciStore::activate_roles(const Principal& principal, RoleSet roles) {
  mutate([&](StoreImage& img, Journal& j) {
    model::activate_roles(img, principal, std::move(roles), &j);
  });
}

AttrValue AciStore::get_attr(const EntityRef& entity, std::string_view name) const {
  return osr::get_attr(*snapshot(), entity, name);
}

void AciStore::set_attr(const EntityRef& entity, std::string_view name,
                        const AttrValue& value) {
  mutate([&](StoreImage& img, Journal& j) {
    osr::set_attr(img, entity, name, value, &j);
  });
}

bool AciStore::flush(const std::filesystem::path& dir) {
  auto snap = snapshot();
  if (!snap->dirty()) return false;
  StoreImage copy = *snap;
  bool wrote = persistence::flush_store(copy, dir);
  mark_flushed(copy.flushed_generation);
  return wrote;
}

std::unique_ptr<AciStore> AciStore::load(const std::filesystem::path& dir) {
  return std::make_unique<AciStore>(persistence::load_store(dir));
}

std::vector<std::string> AciStore::take_journal() {
  std::lock_guard lock(journal_mutex_);
  std::vector<std::string> out = std::move(journal_.lines);
  journal_.lines.clear();
  return out;
}

PeriodicFlusher::PeriodicFlusher(AciStore& store, std::filesystem::path dir,
                                 std::chrono::milliseconds interval)
    : store_(store), dir_(std::move(dir)), interval_(interval) {
  worker_ = std::thread([this] { run(); });
}

PeriodicFlusher::~PeriodicFlusher() { stop(); }

void PeriodicFlusher::stop() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  if (worker_.joinable()) worker_.join();
}

uint64_t PeriodicFlusher::flush_count() const {
  std::lock_guard lock(mutex_);
  return flushes_;
}

void PeriodicFlusher::run() {
  std::unique_lock lock(mutex_);
  for (;;) {
    bool stop = wake_.wait_for(lock, interval_, [this] { return stopping_; });
    lock.unlock();
    bool wrote = false;
    try {
      wrote = store_.flush(dir_);
    } catch (const std::exception&) {
      // Next tick retries; the store stays dirty.
    }
    lock.lock();
    if (wrote) ++flushes_;
    if (stop) return;
  }
}

}  // namespace osr
