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

#include <gtest/gtest.h>

#include "osr/bitvector.h"
#include "osr/codec.h"
#include "osr/error.h"

namespace osr {
namespace {

TEST(BitVector, ParsesAndPrintsBitZeroFirst) {
  auto v = PermissionBitVector::from_string("0110");
  EXPECT_EQ(v.width(), 4u);
  EXPECT_FALSE(v.test(0));
  EXPECT_TRUE(v.test(1));
  EXPECT_TRUE(v.test(2));
  EXPECT_EQ(v.to_string(), "0110");
  EXPECT_EQ(v.count(), 2u);
  EXPECT_EQ(v.set_bits(), (std::vector<size_t>{1, 2}));
}

TEST(BitVector, RejectsNonBinaryText) {
  EXPECT_THROW(PermissionBitVector::from_string("01x"), OsrError);
}

TEST(BitVector, UnionIntersectContains) {
  auto a = PermissionBitVector::from_string("1100");
  auto b = PermissionBitVector::from_string("0110");
  EXPECT_EQ((a | b).to_string(), "1110");
  EXPECT_EQ((a & b).to_string(), "0100");
  EXPECT_TRUE((a | b).contains(a));
  EXPECT_FALSE(a.contains(b));
  EXPECT_TRUE(PermissionBitVector(4).none());
  EXPECT_EQ(PermissionBitVector::all(3).to_string(), "111");
}

TEST(BitVector, WidthMismatchThrows) {
  auto a = PermissionBitVector::from_string("11");
  auto b = PermissionBitVector::from_string("110");
  EXPECT_THROW(a.union_with(b), OsrError);
}

TEST(BitVector, WideVectorsCrossWordBoundary) {
  PermissionBitVector v(130);
  v.set(0);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.count(), 3u);
  EXPECT_EQ(PermissionBitVector::from_string(v.to_string()), v);
  v.set(64, false);
  EXPECT_FALSE(v.test(64));
}

TEST(Codec, PercentRoundTrip) {
  for (std::string s : {"plain", "a b", "x=y,z;w:v#", "100%", "安全型", ""}) {
    auto enc = codec::percent_encode(s);
    EXPECT_EQ(enc.find(' '), std::string::npos);
    EXPECT_EQ(codec::percent_decode(enc), s);
  }
  EXPECT_EQ(codec::percent_encode("a b"), "a%20b");
}

TEST(Codec, RejectsBrokenEscapes) {
  EXPECT_FALSE(codec::percent_decode("%2").has_value());
  EXPECT_FALSE(codec::percent_decode("%zz").has_value());
}

}  // namespace
}  // namespace osr
