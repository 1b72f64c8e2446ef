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
 * Experiment configuration: system states, observable, couplings, pointer
 * grids and run settings. Defaults and presets belong to the CLI layer; the
 * library expects every field to be set explicitly.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weakmeas/pointer.hpp"
#include "weakmeas/qmath.hpp"
#include "weakmeas/vonneumann.hpp"

namespace weakmeas {

enum class RunMode { ClosedForm, ExactMoments, SamplePointer, SampleIdeal, Diagnostics };
enum class Readout { Position, Momentum };

[[nodiscard]] auto to_string(RunMode m) -> std::string;
[[nodiscard]] auto to_string(Readout r) -> std::string;
/// @throws ValidationError naming "run.mode" / "run.readout"
[[nodiscard]] auto parse_run_mode(const std::string &s) -> RunMode;
[[nodiscard]] auto parse_readout(const std::string &s) -> Readout;

struct PointerConfig {
    double sigma = 0.0;
    std::size_t n_points = 0;
    double extent = 0.0;
};

struct RunConfig {
    RunMode mode = RunMode::ClosedForm;
    Readout readout = Readout::Position;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double threshold = 0.0;
};

struct Scenario {
    std::string name;
    std::size_t system_dim = 0;
    HermitianOperator a_matrix;
    Ket i_vector;
    Ket f_vector;
    double ga_ta = 0.0;
    double gf_tf = 0.0;
    double hbar = 0.0;
    PointerConfig pointer_a;
    PointerConfig pointer_f;
    RunConfig run;
    /// Set for the single-qubit family I = (cos θ, sin θ), F = (cos θ, -sin θ).
    std::optional<double> theta_deg;
};

/**
 * @brief Checks every invariant a runnable scenario must satisfy.
 *
 * Throws NotHermitianError ("A_matrix"), NormalizationError ("I_vector",
 * "F_vector"), GridExtentError ("pointer_A.extent", ...) or ValidationError,
 * each carrying the offending field name.
 */
void validate(const Scenario &s);

/// Rebuilds I and F for the theta family.
void apply_theta(Scenario &s, double theta_deg);

[[nodiscard]] auto grid_a(const Scenario &s) -> GridParams;
[[nodiscard]] auto grid_f(const Scenario &s) -> GridParams;
[[nodiscard]] auto coupling_a(const Scenario &s) -> CouplingSpec;
/// Couples F̂ = |F⟩⟨F| to the second pointer.
[[nodiscard]] auto coupling_f(const Scenario &s) -> CouplingSpec;

enum class CouplingOrder { AThenF, FThenA };

/// |I⟩|φ_A⟩ evolved by the A-coupling only.
[[nodiscard]] auto state_after_a(const Scenario &s) -> JointState;
/// |I⟩|φ_A⟩|φ_F⟩ before any coupling.
[[nodiscard]] auto initial_joint_state(const Scenario &s) -> JointState;
/// Both couplings applied exactly; A then F unless overridden.
[[nodiscard]] auto final_state(const Scenario &s,
                               CouplingOrder order = CouplingOrder::AThenF)
    -> JointState;

} // namespace weakmeas
