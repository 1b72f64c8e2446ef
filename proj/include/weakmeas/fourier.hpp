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
 * Unnormalized discrete Fourier transforms along one axis of a dense
 * row-major tensor, plus the bin/momentum bookkeeping shared by the pointer
 * and evolution code.
 */

#pragma once

#include <cstddef>
#include <span>

#include "weakmeas/qmath.hpp"

namespace weakmeas::fourier {

enum class Direction { Forward, Backward };

/**
 * @brief In-place DFT along `axis` of a tensor with the given shape.
 *
 * Forward computes X_m = Σ_j x_j exp(-2πi jm/n); Backward uses the opposite
 * sign. Neither direction scales the result.
 */
void transform_axis(std::span<cplx> data, std::span<const std::size_t> shape,
                    std::size_t axis, Direction dir);

/// Signed frequency index of FFT bin m: m for m < n/2, m - n otherwise.
[[nodiscard]] constexpr auto signed_bin(std::size_t m, std::size_t n)
    -> long long {
    return m < n / 2 ? static_cast<long long>(m)
                     : static_cast<long long>(m) - static_cast<long long>(n);
}

/// FFT bin holding signed frequency k.
[[nodiscard]] constexpr auto bin_of(long long k, std::size_t n)
    -> std::size_t {
    return k >= 0 ? static_cast<std::size_t>(k)
                  : static_cast<std::size_t>(k + static_cast<long long>(n));
}

} // namespace weakmeas::fourier
