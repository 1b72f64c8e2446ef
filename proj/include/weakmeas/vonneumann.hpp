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
 * Joint state of a finite-dimensional system and one or two Gaussian
 * pointers, evolved under von Neumann couplings g t Â ⊗ π̂.
 *
 * Amplitudes are stored as a d × n_1 (× n_2) row-major tensor, last index
 * fastest, with the continuum normalization Σ|Ψ|² Π dx = 1.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weakmeas/pointer.hpp"
#include "weakmeas/qmath.hpp"

namespace weakmeas {

/// Couples `observable` to the momentum of pointer `pointer_axis` with
/// displacement scale `strength` = g t.
struct CouplingSpec {
    HermitianOperator observable;
    double strength = 0.0;
    std::size_t pointer_axis = 0;
};

class JointState {
  public:
    JointState(std::size_t system_dim, std::vector<GridParams> axes,
               std::vector<cplx> amplitudes);

    [[nodiscard]] auto system_dim() const -> std::size_t { return system_dim_; }
    [[nodiscard]] auto axes() const -> const std::vector<GridParams> & {
        return axes_;
    }
    [[nodiscard]] auto num_axes() const -> std::size_t { return axes_.size(); }
    /// {d, n_1, ...}
    [[nodiscard]] auto shape() const -> std::vector<std::size_t>;
    [[nodiscard]] auto amplitudes() const -> std::span<const cplx> {
        return amps_;
    }
    /// Σ|Ψ|² Π dx
    [[nodiscard]] auto norm_squared() const -> double;
    /// Product of the pointer grid spacings.
    [[nodiscard]] auto cell_volume() const -> double;

  private:
    std::size_t system_dim_;
    std::vector<GridParams> axes_;
    std::vector<cplx> amps_;
};

/**
 * @brief Product state |I⟩ ⊗ |φ_1⟩ (⊗ |φ_2⟩).
 *
 * @throws NormalizationError if |I⟩ is not normalized within 1e-10.
 */
[[nodiscard]] auto initial_state(const Ket &system,
                                 std::span<const PointerGrid> pointers)
    -> JointState;

/**
 * @brief Exact action of exp(-i g t Â ⊗ π̂/ħ).
 *
 * Each eigenbranch a of the observable has its pointer translated by
 * strength·a.
 *
 * @throws GridExtentError if any branch would wrap around the grid.
 */
[[nodiscard]] auto evolve_exact(const JointState &s, const CouplingSpec &c)
    -> JointState;

/// |Ψ⟩ - (i g t/ħ)(Â ⊗ π̂)|Ψ⟩, deliberately left unnormalized.
[[nodiscard]] auto evolve_first_order(const JointState &s,
                                      const CouplingSpec &c) -> JointState;

/// Applies the couplings left to right with evolve_exact.
[[nodiscard]] auto evolve_sequence(JointState s,
                                   std::span<const CouplingSpec> couplings)
    -> JointState;

/**
 * Joint readout density of the two pointers on a grid. `first` indexes rows
 * (pointer A, in position or momentum) and `second` columns (pointer F).
 */
struct Density2D {
    std::vector<double> first;  // coordinates along the first axis
    std::vector<double> second; // coordinates along the second axis
    double d_first = 0.0;
    double d_second = 0.0;
    std::vector<double> values; // row-major, second index fastest

    [[nodiscard]] auto at(std::size_t i, std::size_t j) const -> double {
        return values[i * second.size() + j];
    }
    /// Σ P d_first d_second
    [[nodiscard]] auto total() const -> double;
};

/// P(x_A, x_F) = Σ_s |Ψ(s, x_A, x_F)|². @throws MissingAxisError
[[nodiscard]] auto device_density(const JointState &s) -> Density2D;

/// P(π_A, x_F), the first pointer read in momentum. @throws MissingAxisError
[[nodiscard]] auto device_momentum_density(const JointState &s) -> Density2D;

/// Marginal position density of one pointer.
[[nodiscard]] auto marginal_density(const JointState &s, std::size_t axis)
    -> std::vector<double>;

/// Tr[ρ x̂] for pointer `axis` (not divided by the norm). @throws MissingAxisError
[[nodiscard]] auto mean_pointer(const JointState &s, std::size_t axis)
    -> double;

/// ⟨π⟩ of pointer `axis`. @throws MissingAxisError
[[nodiscard]] auto mean_pointer_momentum(const JointState &s,
                                         std::size_t axis) -> double;

/// ⟨x_A x_F⟩ over the two-pointer density. @throws MissingAxisError
[[nodiscard]] auto position_correlation(const JointState &s) -> double;

} // namespace weakmeas
