// Copyright 2026 The lambdarr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lambdarr/philox.h"

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace lambdarr {
namespace {

using ::testing::ElementsAre;

// Known-answer vectors for Philox4x32-10 published with Random123.
TEST(PhiloxTest, KnownAnswerZero) {
  EXPECT_THAT(Philox4x32({0, 0, 0, 0}, {0, 0}),
              ElementsAre(0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u));
}

TEST(PhiloxTest, KnownAnswerAllOnes) {
  EXPECT_THAT(Philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                         {0xffffffff, 0xffffffff}),
              ElementsAre(0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu));
}

TEST(PhiloxTest, KnownAnswerPiDigits) {
  EXPECT_THAT(Philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                         {0xa4093822, 0x299f31d0}),
              ElementsAre(0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u));
}

TEST(PhiloxTest, IsConstexpr) {
  constexpr PhiloxBlock b = Philox4x32({0, 0, 0, 0}, {0, 0});
  static_assert(b[0] == 0x6627e8d5u);
}

TEST(PhiloxTest, SeedSplitsIntoKeyWords) {
  EXPECT_THAT(PhiloxKeyFromSeed(0x0123456789abcdefULL),
              ElementsAre(0x89abcdefu, 0x01234567u));
}

TEST(PhiloxTest, UnitDoubleRange) {
  EXPECT_EQ(ToUnitDouble(0, 0), 0.0);
  EXPECT_LT(ToUnitDouble(0xffffffff, 0xffffffff), 1.0);
  EXPECT_EQ(ToUnitDouble(0x80000000, 0), 0.5);
  EXPECT_EQ(ToUint64(1, 2), (std::uint64_t{1} << 32) | 2);
}

}  // namespace
}  // namespace lambdarr
