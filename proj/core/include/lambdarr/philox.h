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

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011). The output
// block is a pure function of (counter, key), so any draw can be reproduced
// without replaying the draws before it.

#ifndef LAMBDARR_PHILOX_H_
#define LAMBDARR_PHILOX_H_

#include <array>
#include <cstdint>

namespace lambdarr {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
using PhiloxBlock = std::array<std::uint32_t, 4>;

namespace philox_internal {

inline constexpr std::uint32_t kW32A = 0x9E3779B9;
inline constexpr std::uint32_t kW32B = 0xBB67AE85;
inline constexpr std::uint32_t kM4x32A = 0xD2511F53;
inline constexpr std::uint32_t kM4x32B = 0xCD9E8D57;

constexpr PhiloxCounter Round(const PhiloxCounter& ctr, const PhiloxKey& key) {
  const std::uint64_t p0 = std::uint64_t{kM4x32A} * ctr[0];
  const std::uint64_t p1 = std::uint64_t{kM4x32B} * ctr[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace philox_internal

constexpr PhiloxBlock Philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += philox_internal::kW32A;
      key[1] += philox_internal::kW32B;
    }
    ctr = philox_internal::Round(ctr, key);
  }
  return ctr;
}

constexpr PhiloxKey PhiloxKeyFromSeed(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed),
          static_cast<std::uint32_t>(seed >> 32)};
}

// Two 32-bit words -> uniform double in [0, 1) with 53 random bits.
constexpr double ToUnitDouble(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits =
      ((std::uint64_t{hi} << 32) | lo) >> 11;  // top 53 bits
  return static_cast<double>(bits) * 0x1.0p-53;
}

constexpr std::uint64_t ToUint64(std::uint32_t hi, std::uint32_t lo) {
  return (std::uint64_t{hi} << 32) | lo;
}

}  // namespace lambdarr

#endif  // LAMBDARR_PHILOX_H_
