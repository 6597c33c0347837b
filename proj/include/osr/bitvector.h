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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace osr {

// Fixed-width ordered sequence of permission bits. Bit i stands for the i-th
// right name declared for the vector's category.
class PermissionBitVector {
 public:
  PermissionBitVector() = default;
  explicit PermissionBitVector(size_t width);

  static PermissionBitVector all(size_t width);
  // Parses "0110..." (bit 0 first). Throws OsrError(kTypeMismatch).
  static PermissionBitVector from_string(std::string_view bits);

  size_t width() const noexcept { return width_; }
  bool test(size_t bit) const;
  void set(size_t bit, bool value = true);
  bool none() const noexcept;
  size_t count() const noexcept;

  // Width mismatches throw; callers compare vectors of the same category.
  void union_with(const PermissionBitVector& other);
  void intersect_with(const PermissionBitVector& other);
  bool contains(const PermissionBitVector& other) const;

  std::string to_string() const;
  std::vector<size_t> set_bits() const;

  friend bool operator==(const PermissionBitVector&,
                         const PermissionBitVector&) = default;

 private:
  void check_width(const PermissionBitVector& other) const;

  size_t width_ = 0;
  std::vector<uint64_t> words_;
};

PermissionBitVector operator|(PermissionBitVector a,
                              const PermissionBitVector& b);
PermissionBitVector operator&(PermissionBitVector a,
                              const PermissionBitVector& b);

}  // namespace osr
