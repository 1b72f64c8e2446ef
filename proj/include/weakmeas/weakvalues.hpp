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
 * Closed-form weak-value algebra for a pre-selected |I⟩, post-selected ⟨F|
 * and Hermitian observable Â. The post-selection projector F̂ = |F⟩⟨F| is
 * always built here from the ket, never passed in.
 */

#pragma once

#include "weakmeas/pointer.hpp"
#include "weakmeas/qmath.hpp"

namespace weakmeas {

/// Max-entry norms of the commutators that decide when the post-selected
/// readout reduces to ⟨I|Â|I⟩.
struct CommutatorNorms {
    double a_f = 0.0;        // ‖[Â, F̂]‖
    double f_rho = 0.0;      // ‖[F̂, ρ_I]‖
    double a_rho = 0.0;      // ‖[Â, ρ_I]‖
    double a_f_rho = 0.0;    // ‖[Â, [F̂, ρ_I]]‖
};

struct WeakValueReport {
    cplx weak_value;
    double re_formula = 0.0;
    double im_formula = 0.0;
    cplx overlap;                // ⟨F|I⟩
    double postselect_prob = 0.0; // |⟨F|I⟩|²
    double expectation_a = 0.0;   // ⟨I|Â|I⟩
    double eigenvalue_min = 0.0;
    double eigenvalue_max = 0.0;
    CommutatorNorms commutator_norms;

    /// Real part outside [λ_min, λ_max] or a non-negligible imaginary part.
    [[nodiscard]] auto anomalous(double tol = 1e-12) const -> bool;
};

/// Threshold on |⟨F|I⟩| below which the weak value is refused.
inline constexpr double kOrthogonalityThreshold = 1e-12;

/// ⟨F|Â|I⟩ / ⟨F|I⟩. @throws OrthogonalSelectionError
[[nodiscard]] auto weak_value(const HermitianOperator &a, const Ket &initial,
                              const Ket &final) -> cplx;

/// ⟨I|(F̂Â + ÂF̂)|I⟩ / (2⟨I|F̂|I⟩). @throws OrthogonalSelectionError
[[nodiscard]] auto re_weak_formula(const HermitianOperator &a,
                                   const Ket &initial, const Ket &final)
    -> double;

/// ⟨I|(F̂Â - ÂF̂)|I⟩ / (2i⟨I|F̂|I⟩). @throws OrthogonalSelectionError
[[nodiscard]] auto im_weak_formula(const HermitianOperator &a,
                                   const Ket &initial, const Ket &final)
    -> double;

[[nodiscard]] auto commutation_report(const HermitianOperator &a,
                                      const Ket &initial, const Ket &final)
    -> WeakValueReport;

/**
 * @brief |φ⟩ - (i g t/ħ) A_w π̂|φ⟩, renormalized.
 *
 * This is the pointer state one would get by projecting the first-order
 * joint state onto ⟨F| as if system and pointer were separable. It is kept
 * as a diagnostic to compare against the actual joint statistics.
 */
[[nodiscard]] auto naive_device_state(const HermitianOperator &a,
                                      const Ket &initial, const Ket &final,
                                      double strength, const PointerGrid &p)
    -> PointerGrid;

} // namespace weakmeas
