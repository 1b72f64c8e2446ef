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

#include "weakmeas/weakvalues.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weakmeas/errors.hpp"

namespace weakmeas {

namespace {

void require_dims(const HermitianOperator &a, const Ket &i, const Ket &f) {
    if (a.dim() != i.dim() || a.dim() != f.dim()) {
        throw DimensionError("observable and states must share a dimension");
    }
}

auto postselection_weight(const Operator &fhat, const Ket &initial) -> double {
    const double w = expectation(fhat, initial).real();
    if (!(w >= kOrthogonalityThreshold)) {
        throw OrthogonalSelectionError(
            "post-selection probability <I|F|I> = " + std::to_string(w) +
            " vanishes");
    }
    return w;
}

} // namespace

auto WeakValueReport::anomalous(double tol) const -> bool {
    return weak_value.real() < eigenvalue_min - tol ||
           weak_value.real() > eigenvalue_max + tol ||
           std::abs(weak_value.imag()) > tol;
}

auto weak_value(const HermitianOperator &a, const Ket &initial,
                const Ket &final) -> cplx {
    require_dims(a, initial, final);
    const cplx overlap = inner(final, initial);
    if (std::abs(overlap) < kOrthogonalityThreshold) {
        throw OrthogonalSelectionError("pre- and post-selected states are "
                                       "orthogonal, |<F|I>| = " +
                                       std::to_string(std::abs(overlap)));
    }
    return inner(final, a.matrix().apply(initial)) / overlap;
}

auto re_weak_formula(const HermitianOperator &a, const Ket &initial,
                     const Ket &final) -> double {
    require_dims(a, initial, final);
    const Operator fhat = projector(final);
    const double w = postselection_weight(fhat, initial);
    return expectation(anticommutator(fhat, a), initial).real() / (2.0 * w);
}

auto im_weak_formula(const HermitianOperator &a, const Ket &initial,
                     const Ket &final) -> double {
    require_dims(a, initial, final);
    const Operator fhat = projector(final);
    const double w = postselection_weight(fhat, initial);
    // ⟨[F̂,Â]⟩ is purely imaginary for Hermitian F̂, Â.
    const cplx num = expectation(commutator(fhat, a), initial);
    return (num / cplx(0.0, 2.0 * w)).real();
}

auto commutation_report(const HermitianOperator &a, const Ket &initial,
                        const Ket &final) -> WeakValueReport {
    WeakValueReport r;
    r.weak_value = weak_value(a, initial, final);
    r.re_formula = re_weak_formula(a, initial, final);
    r.im_formula = im_weak_formula(a, initial, final);
    r.overlap = inner(final, initial);
    r.postselect_prob = std::norm(r.overlap);
    r.expectation_a = expectation(a, initial).real();

    const auto eig = herm_eig(a);
    r.eigenvalue_max = eig.eigenvalues.front();
    r.eigenvalue_min = eig.eigenvalues.back();

    const Operator fhat = projector(final);
    const Operator rho = projector(initial);
    const Operator f_rho = commutator(fhat, rho);
    r.commutator_norms = {
        .a_f = commutator(a, fhat).max_abs(),
        .f_rho = f_rho.max_abs(),
        .a_rho = commutator(a, rho).max_abs(),
        .a_f_rho = commutator(a, f_rho).max_abs(),
    };
    return r;
}

auto naive_device_state(const HermitianOperator &a, const Ket &initial,
                        const Ket &final, double strength,
                        const PointerGrid &p) -> PointerGrid {
    const cplx aw = weak_value(a, initial, final);
    const auto &params = p.params();
    check_shift_guard(params, strength * std::abs(aw));
    if (strength == 0.0) {
        return p;
    }
    const auto pi_phi = apply_momentum(p);
    const cplx coeff = cplx(0.0, -strength / params.hbar) * aw;
    std::vector<cplx> amps(p.size());
    double mass = 0.0;
    for (std::size_t j = 0; j < amps.size(); ++j) {
        amps[j] = p.amplitudes()[j] + coeff * pi_phi.amplitudes()[j];
        mass += std::norm(amps[j]);
    }
    const double scale = 1.0 / std::sqrt(mass * params.dx());
    for (auto &v : amps) {
        v *= scale;
    }
    return {params, std::move(amps)};
}

} // namespace weakmeas
