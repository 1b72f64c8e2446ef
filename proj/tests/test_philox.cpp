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

#include <cmath>
#include <set>

#include <doctest.h>

#include "weakmeas/philox.hpp"

using weakmeas::CounterStream;
using weakmeas::PhiloxCounter;
using weakmeas::philox4x32;

TEST_SUITE("philox") {

TEST_CASE("known answer vectors") {
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                     {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                     {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("compile-time evaluation") {
    constexpr auto out = philox4x32({0, 0, 0, 0}, {0, 0});
    static_assert(out[0] == 0x6627e8d5);
}

TEST_CASE("streams are reproducible and distinct") {
    CounterStream a(42, 7);
    CounterStream b(42, 7);
    CounterStream c(42, 8);
    CounterStream d(43, 7);
    std::set<double> seen;
    for (int k = 0; k < 100; ++k) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x != c.uniform());
        CHECK(x != d.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        seen.insert(x);
    }
    CHECK(seen.size() == 100);
}

TEST_CASE("uniform moments") {
    CounterStream s(1, 0);
    const int n = 200000;
    double sum = 0.0;
    double sq = 0.0;
    for (int k = 0; k < n; ++k) {
        const double x = s.uniform();
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sq / n - mean * mean - 1.0 / 12.0) < 2e-3);
}

} // TEST_SUITE
