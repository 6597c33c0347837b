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

#include "osr/bitvector.h"

#include <bit>

#include "osr/error.h"

namespace osr {
namespace {

constexpr size_t kWordBits = 64;

size_t words_for(size_t width) { return (width + kWordBits - 1) / kWordBits; }

}  // namespace

PermissionBitVector::PermissionBitVector(size_t width)
    : width_(width), words_(words_for(width), 0) {}

PermissionBitVector PermissionBitVector::all(size_t width) {
  PermissionBitVector v(width);
  for (size_t i = 0; i < width; ++i) v.set(i);
  return v;
}

PermissionBitVector PermissionBitVector::from_string(std::string_view bits) {
  PermissionBitVector v(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw OsrError(ErrorCode::kTypeMismatch,
                     "bit vector must be a string of 0/1, got '" +
                         std::string(bits) + "'");
    }
  }
  return v;
}

bool PermissionBitVector::test(size_t bit) const {
  if (bit >= width_) return false;
  return (words_[bit / kWordBits] >> (bit % kWordBits)) & 1u;
}

void PermissionBitVector::set(size_t bit, bool value) {
  if (bit >= width_) {
    throw OsrError(ErrorCode::kTypeMismatch,
                   "bit " + std::to_string(bit) + " outside width " +
                       std::to_string(width_));
  }
  const uint64_t mask = uint64_t{1} << (bit % kWordBits);
  if (value) {
    words_[bit / kWordBits] |= mask;
  } else {
    words_[bit / kWordBits] &= ~mask;
  }
}

bool PermissionBitVector::none() const noexcept {
  for (uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

size_t PermissionBitVector::count() const noexcept {
  size_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

void PermissionBitVector::check_width(const PermissionBitVector& other) const {
  if (other.width_ != width_) {
    throw OsrError(ErrorCode::kTypeMismatch,
                   "bit vector width mismatch: " + std::to_string(width_) +
                       " vs " + std::to_string(other.width_));
  }
}

void PermissionBitVector::union_with(const PermissionBitVector& other) {
  check_width(other);
  for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

void PermissionBitVector::intersect_with(const PermissionBitVector& other) {
  check_width(other);
  for (size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
}

bool PermissionBitVector::contains(const PermissionBitVector& other) const {
  check_width(other);
  for (size_t i = 0; i < words_.size(); ++i) {
    if ((other.words_[i] & ~words_[i]) != 0) return false;
  }
  return true;
}

std::string PermissionBitVector::to_string() const {
  std::string out(width_, '0');
  for (size_t i = 0; i < width_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

std::vector<size_t> PermissionBitVector::set_bits() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < width_; ++i) {
    if (test(i)) out.push_back(i);
  }
  return out;
}

PermissionBitVector operator|(PermissionBitVector a,
                              const PermissionBitVector& b) {
  a.union_with(b);
  return a;
}

PermissionBitVector operator&(PermissionBitVector a,
                              const PermissionBitVector& b) {
  a.intersect_with(b);
  return a;
}

}  // namespace osr
