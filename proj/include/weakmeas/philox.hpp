// Copyright 2026 The weakmeas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Philox4x32-10 counter-based generator (Salmon et al., SC'11).
 *
 * Every random number is a pure function of (key, counter), so a record's
 * draws depend only on the run seed and the record index, never on which
 * thread produced it.
 */

#pragma once

#include <array>
#include <cstdint>

namespace weakmeas {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

[[nodiscard]] constexpr auto philox4x32(PhiloxCounter ctr, PhiloxKey key,
                                        int rounds = 10) -> PhiloxCounter {
    constexpr std::uint32_t kM0 = 0xD2511F53;
    constexpr std::uint32_t kM1 = 0xCD9E8D57;
    constexpr std::uint32_t kW0 = 0x9E3779B9;
    constexpr std::uint32_t kW1 = 0xBB67AE85;
    for (int r = 0; r < rounds; ++r) {
        if (r > 0) {
            key[0] += kW0;
            key[1] += kW1;
        }
        const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Uniform doubles in [0, 1) for one (seed, stream) pair.
class CounterStream {
  public:
    constexpr CounterStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    constexpr auto uniform() -> double {
        if (used_ == 2) {
            refill();
        }
        const std::uint64_t bits =
            (std::uint64_t{block_[2 * used_]} << 32) | block_[2 * used_ + 1];
        ++used_;
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

  private:
    constexpr void refill() {
        block_ = philox4x32({static_cast<std::uint32_t>(stream_),
                             static_cast<std::uint32_t>(stream_ >> 32),
                             static_cast<std::uint32_t>(next_block_),
                             static_cast<std::uint32_t>(next_block_ >> 32)},
                            key_);
        ++next_block_;
        used_ = 0;
    }

    PhiloxKey key_;
    std::uint64_t stream_;
    std::uint64_t next_block_ = 0;
    PhiloxCounter block_{};
    int used_ = 2;
};

} // namespace weakmeas
