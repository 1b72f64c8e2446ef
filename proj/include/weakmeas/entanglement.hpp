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
 * Separability witnesses for joint system/pointer states.
 *
 * product_check is a complete test for pure states: a bipartition is a
 * product iff its second Schmidt coefficient vanishes. correlation_witness
 * is one-sided: a nonzero gap ⟨x_A x_F⟩ - x̄_A x̄_F rules out a product device
 * state, but a zero gap proves nothing, and neither settles whether the
 * reduced mixed state of the pointers is a convex sum of products.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weakmeas/vonneumann.hpp"

namespace weakmeas {

enum class Bipartition {
    SystemVsDevices, // system | all pointers
    DeviceAVsRest,   // pointer 0 | system + pointer 1
    DeviceFVsRest,   // pointer 1 | system + pointer 0
};

inline constexpr double kSchmidtTolerance = 1e-10;
inline constexpr double kCorrelationThreshold = 1e-8;

struct SeparabilityReport {
    std::string bipartition;
    std::vector<double> singular_values;
    std::optional<double> correlation_gap;
    std::optional<bool> is_product; // pure-state check only
    double tolerance = 0.0;
};

[[nodiscard]] auto label(Bipartition b, std::size_t num_axes) -> std::string;

/// @throws DimensionError if the bipartition needs an absent pointer.
[[nodiscard]] auto product_check(const JointState &s, Bipartition b)
    -> SeparabilityReport;

/// @throws MissingAxisError unless the state has two pointers.
[[nodiscard]] auto correlation_witness(const JointState &s)
    -> SeparabilityReport;

} // namespace weakmeas
