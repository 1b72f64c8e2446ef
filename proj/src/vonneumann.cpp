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

#include "weakmeas/vonneumann.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "weakmeas/errors.hpp"
#include "weakmeas/fourier.hpp"

namespace weakmeas {

namespace {

auto product(std::span<const std::size_t> v) -> std::size_t {
    return std::accumulate(v.begin(), v.end(), std::size_t{1},
                           std::multiplies<>());
}

void require_axis(const JointState &s, std::size_t axis) {
    if (axis >= s.num_axes()) {
        throw MissingAxisError("pointer axis " + std::to_string(axis) +
                               " not present (state has " +
                               std::to_string(s.num_axes()) + ")");
    }
}

void require_two_axes(const JointState &s) {
    if (s.num_axes() != 2) {
        throw MissingAxisError("two pointer axes required, state has " +
                               std::to_string(s.num_axes()));
    }
}

auto pointer_shape(const JointState &s) -> std::vector<std::size_t> {
    std::vector<std::size_t> shape;
    for (const auto &a : s.axes()) {
        shape.push_back(a.n_points);
    }
    return shape;
}

void check_coupling(const JointState &s, const CouplingSpec &c) {
    require_axis(s, c.pointer_axis);
    if (c.observable.dim() != s.system_dim()) {
        throw DimensionError("coupling observable has dimension " +
                             std::to_string(c.observable.dim()) +
                             ", system has " + std::to_string(s.system_dim()));
    }
    if (!std::isfinite(c.strength)) {
        throw ValidationError("coupling strength must be finite", "strength");
    }
}

// Multiplies every pointer-space slice along `axis` by f(bin momentum) in
// Fourier space: data ← IFFT[f(p) FFT[data]] / n.
template <class F>
void spectral_multiply(std::span<cplx> data, std::span<const std::size_t> shape,
                       std::size_t axis, const GridParams &grid, F &&f) {
    fourier::transform_axis(data, shape, axis, fourier::Direction::Forward);
    const std::size_t n = shape[axis];
    std::size_t inner = 1;
    for (std::size_t k = axis + 1; k < shape.size(); ++k) {
        inner *= shape[k];
    }
    std::vector<cplx> factor(n);
    for (std::size_t m = 0; m < n; ++m) {
        factor[m] = f(grid.bin_momentum(m)) / static_cast<double>(n);
    }
    for (std::size_t idx = 0; idx < data.size(); ++idx) {
        data[idx] *= factor[(idx / inner) % n];
    }
    fourier::transform_axis(data, shape, axis, fourier::Direction::Backward);
}

// Transforms the first pointer axis of every system slice to momentum and
// accumulates Σ_s |Ψ̃|² into an (n_A, rest) table with ascending momenta.
auto momentum_density_first_axis(const JointState &s, std::size_t axis)
    -> std::vector<double> {
    const auto shape = pointer_shape(s);
    const std::size_t slice = product(shape);
    const auto &grid = s.axes()[axis];
    const std::size_t n = grid.n_points;
    std::size_t inner = 1;
    for (std::size_t k = axis + 1; k < shape.size(); ++k) {
        inner *= shape[k];
    }
    const std::size_t outer = slice / (n * inner);
    const double scale2 =
        grid.dx() * grid.dx() / (2.0 * std::numbers::pi * grid.hbar);

    std::vector<double> out(slice, 0.0);
    std::vector<cplx> work(slice);
    for (std::size_t sys = 0; sys < s.system_dim(); ++sys) {
        const auto src = s.amplitudes().subspan(sys * slice, slice);
        std::copy(src.begin(), src.end(), work.begin());
        fourier::transform_axis(work, shape, axis, fourier::Direction::Forward);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t k = 0; k < n; ++k) {
                const long long signed_k =
                    static_cast<long long>(k) - static_cast<long long>(n / 2);
                const std::size_t m = fourier::bin_of(signed_k, n);
                for (std::size_t i = 0; i < inner; ++i) {
                    out[(o * n + k) * inner + i] +=
                        scale2 * std::norm(work[(o * n + m) * inner + i]);
                }
            }
        }
    }
    return out;
}

auto position_density(const JointState &s) -> std::vector<double> {
    const std::size_t slice = product(pointer_shape(s));
    std::vector<double> out(slice, 0.0);
    for (std::size_t sys = 0; sys < s.system_dim(); ++sys) {
        const auto src = s.amplitudes().subspan(sys * slice, slice);
        for (std::size_t i = 0; i < slice; ++i) {
            out[i] += std::norm(src[i]);
        }
    }
    return out;
}

} // namespace

// ---- JointState -----------------------------------------------------------

JointState::JointState(std::size_t system_dim, std::vector<GridParams> axes,
                       std::vector<cplx> amplitudes)
    : system_dim_(system_dim), axes_(std::move(axes)),
      amps_(std::move(amplitudes)) {
    if (system_dim_ == 0) {
        throw DimensionError("system dimension must be positive");
    }
    if (amps_.size() != product(shape())) {
        throw DimensionError("joint amplitudes do not match the state shape");
    }
}

auto JointState::shape() const -> std::vector<std::size_t> {
    std::vector<std::size_t> shape{system_dim_};
    for (const auto &a : axes_) {
        shape.push_back(a.n_points);
    }
    return shape;
}

auto JointState::cell_volume() const -> double {
    double v = 1.0;
    for (const auto &a : axes_) {
        v *= a.dx();
    }
    return v;
}

auto JointState::norm_squared() const -> double {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s * cell_volume();
}

auto initial_state(const Ket &system, std::span<const PointerGrid> pointers)
    -> JointState {
    if (!system.is_normalized(1e-10)) {
        throw NormalizationError("initial system state has norm " +
                                 std::to_string(system.norm()));
    }
    if (pointers.empty() || pointers.size() > 2) {
        throw DimensionError("one or two pointers are supported");
    }
    std::vector<GridParams> axes;
    for (const auto &p : pointers) {
        if (p.params().hbar != pointers.front().params().hbar) {
            throw ValidationError("pointers disagree on hbar", "hbar");
        }
        axes.push_back(p.params());
    }
    Ket joint = system;
    for (const auto &p : pointers) {
        joint = tensor(joint, Ket({p.amplitudes().begin(), p.amplitudes().end()}));
    }
    const auto amps = joint.amplitudes();
    return {system.dim(), std::move(axes), {amps.begin(), amps.end()}};
}

// ---- evolution ------------------------------------------------------------

auto evolve_exact(const JointState &s, const CouplingSpec &c) -> JointState {
    check_coupling(s, c);
    const auto &grid = s.axes()[c.pointer_axis];
    const auto eig = herm_eig(c.observable);
    for (double a : eig.eigenvalues) {
        check_shift_guard(grid, c.strength * a);
    }

    const auto shape = pointer_shape(s);
    const std::size_t slice = product(shape);
    const std::size_t d = s.system_dim();
    const auto in = s.amplitudes();

    std::vector<cplx> out(in.size(), 0.0);
    std::vector<cplx> branch(slice);
    for (std::size_t k = 0; k < d; ++k) {
        const Ket &u = eig.eigenvectors[k];
        // ⟨u_k|Ψ⟩ as a pointer-space tensor.
        std::fill(branch.begin(), branch.end(), cplx{0.0});
        for (std::size_t sys = 0; sys < d; ++sys) {
            const cplx w = std::conj(u[sys]);
            if (w == cplx{0.0}) {
                continue;
            }
            for (std::size_t i = 0; i < slice; ++i) {
                branch[i] += w * in[sys * slice + i];
            }
        }
        const double delta = c.strength * eig.eigenvalues[k];
        if (delta != 0.0) {
            spectral_multiply(branch, shape, c.pointer_axis, grid,
                              [&](double p) {
                                  return std::polar(1.0, -p * delta / grid.hbar);
                              });
        }
        for (std::size_t sys = 0; sys < d; ++sys) {
            const cplx w = u[sys];
            if (w == cplx{0.0}) {
                continue;
            }
            for (std::size_t i = 0; i < slice; ++i) {
                out[sys * slice + i] += w * branch[i];
            }
        }
    }
    return {d, s.axes(), std::move(out)};
}

auto evolve_first_order(const JointState &s, const CouplingSpec &c)
    -> JointState {
    check_coupling(s, c);
    const auto &grid = s.axes()[c.pointer_axis];
    const auto full_shape = s.shape();
    const std::size_t slice = product(pointer_shape(s));
    const std::size_t d = s.system_dim();
    const auto in = s.amplitudes();

    // (1 ⊗ π̂)Ψ, then apply Â on the system index.
    std::vector<cplx> pi_psi(in.begin(), in.end());
    spectral_multiply(pi_psi, full_shape, c.pointer_axis + 1, grid,
                      [](double p) { return cplx{p}; });

    const cplx coeff{0.0, -c.strength / grid.hbar};
    std::vector<cplx> out(in.begin(), in.end());
    const Operator &a = c.observable;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t col = 0; col < d; ++col) {
            const cplx w = coeff * a(r, col);
            if (w == cplx{0.0}) {
                continue;
            }
            for (std::size_t i = 0; i < slice; ++i) {
                out[r * slice + i] += w * pi_psi[col * slice + i];
            }
        }
    }
    return {d, s.axes(), std::move(out)};
}

auto evolve_sequence(JointState s, std::span<const CouplingSpec> couplings)
    -> JointState {
    for (const auto &c : couplings) {
        s = evolve_exact(s, c);
    }
    return s;
}

// ---- densities and moments ------------------------------------------------

auto Density2D::total() const -> double {
    double s = 0.0;
    for (double v : values) {
        s += v;
    }
    return s * d_first * d_second;
}

auto device_density(const JointState &s) -> Density2D {
    require_two_axes(s);
    const auto &a = s.axes()[0];
    const auto &f = s.axes()[1];
    Density2D out;
    for (std::size_t j = 0; j < a.n_points; ++j) {
        out.first.push_back(a.position(j));
    }
    for (std::size_t j = 0; j < f.n_points; ++j) {
        out.second.push_back(f.position(j));
    }
    out.d_first = a.dx();
    out.d_second = f.dx();
    out.values = position_density(s);
    return out;
}

auto device_momentum_density(const JointState &s) -> Density2D {
    require_two_axes(s);
    const auto &a = s.axes()[0];
    const auto &f = s.axes()[1];
    Density2D out;
    for (std::size_t k = 0; k < a.n_points; ++k) {
        out.first.push_back(a.momentum(k));
    }
    for (std::size_t j = 0; j < f.n_points; ++j) {
        out.second.push_back(f.position(j));
    }
    out.d_first = a.dp();
    out.d_second = f.dx();
    out.values = momentum_density_first_axis(s, 0);
    return out;
}

auto marginal_density(const JointState &s, std::size_t axis)
    -> std::vector<double> {
    require_axis(s, axis);
    const auto shape = pointer_shape(s);
    const auto joint = position_density(s);
    const std::size_t n = shape[axis];
    std::size_t inner = 1;
    for (std::size_t k = axis + 1; k < shape.size(); ++k) {
        inner *= shape[k];
    }
    double other_volume = 1.0;
    for (std::size_t k = 0; k < s.num_axes(); ++k) {
        if (k != axis) {
            other_volume *= s.axes()[k].dx();
        }
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t idx = 0; idx < joint.size(); ++idx) {
        out[(idx / inner) % n] += joint[idx];
    }
    for (auto &v : out) {
        v *= other_volume;
    }
    return out;
}

auto mean_pointer(const JointState &s, std::size_t axis) -> double {
    const auto marginal = marginal_density(s, axis);
    const auto &grid = s.axes()[axis];
    double sx = 0.0;
    for (std::size_t j = 0; j < marginal.size(); ++j) {
        sx += marginal[j] * grid.position(j);
    }
    return sx * grid.dx();
}

auto mean_pointer_momentum(const JointState &s, std::size_t axis) -> double {
    require_axis(s, axis);
    const auto shape = pointer_shape(s);
    const auto table = momentum_density_first_axis(s, axis);
    const auto &grid = s.axes()[axis];
    const std::size_t n = grid.n_points;
    std::size_t inner = 1;
    for (std::size_t k = axis + 1; k < shape.size(); ++k) {
        inner *= shape[k];
    }
    double other_volume = 1.0;
    for (std::size_t k = 0; k < s.num_axes(); ++k) {
        if (k != axis) {
            other_volume *= s.axes()[k].dx();
        }
    }
    double sp = 0.0;
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        sp += table[idx] * grid.momentum((idx / inner) % n);
    }
    return sp * grid.dp() * other_volume;
}

auto position_correlation(const JointState &s) -> double {
    const auto density = device_density(s);
    const std::size_t na = density.first.size();
    const std::size_t nf = density.second.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < nf; ++j) {
            row += density.at(i, j) * density.second[j];
        }
        acc += density.first[i] * row;
    }
    return acc * density.d_first * density.d_second;
}

} // namespace weakmeas
