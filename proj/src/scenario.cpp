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

#include "weakmeas/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weakmeas/errors.hpp"

namespace weakmeas {

auto to_string(RunMode m) -> std::string {
    switch (m) {
    case RunMode::ClosedForm:
        return "closed-form";
    case RunMode::ExactMoments:
        return "exact-moments";
    case RunMode::SamplePointer:
        return "sample-pointer";
    case RunMode::SampleIdeal:
        return "sample-ideal";
    case RunMode::Diagnostics:
        return "diagnostics";
    }
    return "?";
}

auto to_string(Readout r) -> std::string {
    return r == Readout::Position ? "position" : "momentum";
}

auto parse_run_mode(const std::string &s) -> RunMode {
    for (auto m : {RunMode::ClosedForm, RunMode::ExactMoments,
                   RunMode::SamplePointer, RunMode::SampleIdeal,
                   RunMode::Diagnostics}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw ValidationError("unknown run mode '" + s + "'", "run.mode");
}

auto parse_readout(const std::string &s) -> Readout {
    if (s == "position") {
        return Readout::Position;
    }
    if (s == "momentum") {
        return Readout::Momentum;
    }
    throw ValidationError("unknown readout '" + s + "'", "run.readout");
}

namespace {

void validate_pointer(const PointerConfig &p, double hbar,
                      const std::string &field, double max_shift) {
    const GridParams g{p.n_points, p.extent, p.sigma, hbar};
    try {
        validate_grid(g);
        check_shift_guard(g, max_shift);
    } catch (const Error &e) {
        const std::string sub = e.field().empty() ? "" : "." + e.field();
        if (dynamic_cast<const GridExtentError *>(&e) != nullptr) {
            throw GridExtentError(field + ": " + e.what(), field + sub);
        }
        throw ValidationError(field + ": " + e.what(), field + sub);
    }
}

} // namespace

void validate(const Scenario &s) {
    if (s.system_dim == 0) {
        throw ValidationError("system_dim must be positive", "system_dim");
    }
    if (s.a_matrix.dim() != s.system_dim) {
        throw DimensionError("A_matrix is not system_dim x system_dim",
                             "A_matrix");
    }
    if (s.a_matrix.matrix().hermiticity_defect() > 1e-12) {
        throw NotHermitianError("A_matrix is not Hermitian", "A_matrix");
    }
    if (s.i_vector.dim() != s.system_dim) {
        throw DimensionError("I_vector length differs from system_dim",
                             "I_vector");
    }
    if (s.f_vector.dim() != s.system_dim) {
        throw DimensionError("F_vector length differs from system_dim",
                             "F_vector");
    }
    if (!s.i_vector.is_normalized(1e-10)) {
        throw NormalizationError("I_vector is not normalized", "I_vector");
    }
    if (!s.f_vector.is_normalized(1e-10)) {
        throw NormalizationError("F_vector is not normalized", "F_vector");
    }
    if (!std::isfinite(s.ga_ta)) {
        throw ValidationError("gA_tA must be finite", "gA_tA");
    }
    if (!std::isfinite(s.gf_tf)) {
        throw ValidationError("gF_tF must be finite", "gF_tF");
    }
    if (!(s.hbar > 0.0) || !std::isfinite(s.hbar)) {
        throw ValidationError("hbar must be positive", "hbar");
    }
    const auto eig = herm_eig(s.a_matrix);
    const double max_eig = std::max(std::abs(eig.eigenvalues.front()),
                                    std::abs(eig.eigenvalues.back()));
    validate_pointer(s.pointer_a, s.hbar, "pointer_A", max_eig * s.ga_ta);
    validate_pointer(s.pointer_f, s.hbar, "pointer_F", s.gf_tf);
    if (!std::isfinite(s.run.threshold)) {
        throw ValidationError("threshold must be finite", "run.threshold");
    }
    if (s.theta_deg && s.system_dim != 2) {
        throw ValidationError("theta applies to single-qubit scenarios only",
                              "theta_deg");
    }
}

void apply_theta(Scenario &s, double theta_deg) {
    if (s.system_dim != 2) {
        throw ValidationError("theta applies to single-qubit scenarios only",
                              "theta_deg");
    }
    const double t = theta_deg * std::numbers::pi / 180.0;
    s.i_vector = Ket{std::cos(t), std::sin(t)};
    s.f_vector = Ket{std::cos(t), -std::sin(t)};
    s.theta_deg = theta_deg;
}

auto grid_a(const Scenario &s) -> GridParams {
    return {s.pointer_a.n_points, s.pointer_a.extent, s.pointer_a.sigma,
            s.hbar};
}

auto grid_f(const Scenario &s) -> GridParams {
    return {s.pointer_f.n_points, s.pointer_f.extent, s.pointer_f.sigma,
            s.hbar};
}

auto coupling_a(const Scenario &s) -> CouplingSpec {
    return {s.a_matrix, s.ga_ta, 0};
}

auto coupling_f(const Scenario &s) -> CouplingSpec {
    return {HermitianOperator(projector(s.f_vector)), s.gf_tf, 1};
}

namespace {

auto pointer_of(const GridParams &g) -> PointerGrid {
    return gaussian_pointer(g.sigma, g.n_points, g.extent, g.hbar);
}

} // namespace

auto state_after_a(const Scenario &s) -> JointState {
    const PointerGrid pointers[] = {pointer_of(grid_a(s))};
    return evolve_exact(initial_state(s.i_vector, pointers), coupling_a(s));
}

auto initial_joint_state(const Scenario &s) -> JointState {
    const PointerGrid pointers[] = {pointer_of(grid_a(s)),
                                    pointer_of(grid_f(s))};
    return initial_state(s.i_vector, pointers);
}

auto final_state(const Scenario &s, CouplingOrder order) -> JointState {
    const CouplingSpec a = coupling_a(s);
    const CouplingSpec f = coupling_f(s);
    const CouplingSpec a_then_f[] = {a, f};
    const CouplingSpec f_then_a[] = {f, a};
    return evolve_sequence(initial_joint_state(s),
                           order == CouplingOrder::AThenF ? a_then_f
                                                          : f_then_a);
}

} // namespace weakmeas
