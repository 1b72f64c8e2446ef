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

#include "weakmeas/entanglement.hpp"

#include <cmath>

#include "weakmeas/errors.hpp"

namespace weakmeas {

auto label(Bipartition b, std::size_t num_axes) -> std::string {
    switch (b) {
    case Bipartition::SystemVsDevices:
        return num_axes == 1 ? "system|A" : "system|A+F";
    case Bipartition::DeviceAVsRest:
        return num_axes == 1 ? "A|system" : "A|system+F";
    case Bipartition::DeviceFVsRest:
        return "F|system+A";
    }
    return "?";
}

auto product_check(const JointState &s, Bipartition b) -> SeparabilityReport {
    const auto shape = s.shape();
    const double root_cell = std::sqrt(s.cell_volume());
    const auto amps = s.amplitudes();

    // Ket coefficients are amplitudes scaled by sqrt(Π dx).
    std::vector<cplx> m(amps.size());
    std::size_t rows = 0;
    std::size_t cols = 0;
    switch (b) {
    case Bipartition::SystemVsDevices:
        rows = shape[0];
        cols = amps.size() / rows;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            m[i] = amps[i] * root_cell;
        }
        break;
    case Bipartition::DeviceAVsRest: {
        // (s, a, f) -> row a, column (s, f)
        const std::size_t d = shape[0];
        const std::size_t na = shape[1];
        const std::size_t nf = shape.size() > 2 ? shape[2] : 1;
        rows = na;
        cols = d * nf;
        for (std::size_t sys = 0; sys < d; ++sys) {
            for (std::size_t a = 0; a < na; ++a) {
                for (std::size_t f = 0; f < nf; ++f) {
                    m[a * cols + sys * nf + f] =
                        amps[(sys * na + a) * nf + f] * root_cell;
                }
            }
        }
        break;
    }
    case Bipartition::DeviceFVsRest: {
        if (s.num_axes() < 2) {
            throw DimensionError("bipartition F|system+A needs two pointers");
        }
        // (s, a, f) -> row f, column (s, a)
        const std::size_t d = shape[0];
        const std::size_t na = shape[1];
        const std::size_t nf = shape[2];
        rows = nf;
        cols = d * na;
        for (std::size_t sys = 0; sys < d; ++sys) {
            for (std::size_t a = 0; a < na; ++a) {
                for (std::size_t f = 0; f < nf; ++f) {
                    m[f * cols + sys * na + a] =
                        amps[(sys * na + a) * nf + f] * root_cell;
                }
            }
        }
        break;
    }
    }

    SeparabilityReport r;
    r.bipartition = label(b, s.num_axes());
    r.singular_values = singular_values(m, rows, cols);
    r.tolerance = kSchmidtTolerance;
    const double second =
        r.singular_values.size() > 1 ? r.singular_values[1] : 0.0;
    r.is_product = second <= kSchmidtTolerance;
    return r;
}

auto correlation_witness(const JointState &s) -> SeparabilityReport {
    const double xa = mean_pointer(s, 0);
    const double xf = mean_pointer(s, 1);
    SeparabilityReport r;
    r.bipartition = "A|F";
    r.correlation_gap = std::abs(position_correlation(s) - xa * xf);
    r.tolerance = kCorrelationThreshold;
    return r;
}

} // namespace weakmeas
