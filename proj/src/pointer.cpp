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

#include "weakmeas/pointer.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "weakmeas/errors.hpp"
#include "weakmeas/fourier.hpp"

namespace weakmeas {

namespace {

constexpr double kPi = std::numbers::pi;

auto fft(std::vector<cplx> v, fourier::Direction dir) -> std::vector<cplx> {
    const std::size_t shape[1] = {v.size()};
    fourier::transform_axis(v, shape, 0, dir);
    return v;
}

} // namespace

auto GridParams::dp() const -> double { return 2.0 * kPi * hbar / extent; }

auto GridParams::momentum(std::size_t k) const -> double {
    return (static_cast<double>(k) - 0.5 * static_cast<double>(n_points)) *
           dp();
}

auto GridParams::bin_momentum(std::size_t m) const -> double {
    return static_cast<double>(fourier::signed_bin(m, n_points)) * dp();
}

void validate_grid(const GridParams &params) {
    if (params.n_points < 2 || !std::has_single_bit(params.n_points)) {
        throw ValidationError("n_points must be a power of two >= 2, got " +
                                  std::to_string(params.n_points),
                              "n_points");
    }
    if (!(params.sigma > 0.0) || !std::isfinite(params.sigma)) {
        throw ValidationError("sigma must be positive", "sigma");
    }
    if (!(params.hbar > 0.0) || !std::isfinite(params.hbar)) {
        throw ValidationError("hbar must be positive", "hbar");
    }
    if (!(params.extent > 0.0) || !std::isfinite(params.extent)) {
        throw ValidationError("extent must be positive", "extent");
    }
    if (params.extent < 16.0 * params.sigma) {
        throw GridExtentError("extent " + std::to_string(params.extent) +
                                  " is below 16 sigma = " +
                                  std::to_string(16.0 * params.sigma),
                              "extent");
    }
}

void check_shift_guard(const GridParams &params, double delta) {
    if (std::abs(delta) + 6.0 * params.sigma > 0.5 * params.extent) {
        throw GridExtentError("translation by " + std::to_string(delta) +
                                  " would wrap around a grid of extent " +
                                  std::to_string(params.extent),
                              "extent");
    }
}

PointerGrid::PointerGrid(GridParams params, std::vector<cplx> amplitudes)
    : params_(params), amps_(std::move(amplitudes)) {
    if (amps_.size() != params_.n_points) {
        throw DimensionError("pointer amplitudes do not match n_points");
    }
}

auto PointerGrid::norm_squared() const -> double {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s * params_.dx();
}

auto MomentumGrid::norm_squared() const -> double {
    double s = 0.0;
    for (const auto &a : amplitudes) {
        s += std::norm(a);
    }
    return s * params.dp();
}

auto gaussian_pointer(double sigma, std::size_t n_points, double extent,
                      double hbar) -> PointerGrid {
    const GridParams params{n_points, extent, sigma, hbar};
    validate_grid(params);

    const double prefactor = std::pow(1.0 / (std::sqrt(2.0 * kPi) * sigma), 0.5);
    std::vector<cplx> amps(n_points);
    double mass = 0.0;
    for (std::size_t j = 0; j < n_points; ++j) {
        const double x = params.position(j);
        amps[j] = prefactor * std::exp(-x * x / (4.0 * sigma * sigma));
        mass += std::norm(amps[j]);
    }
    const double scale = 1.0 / std::sqrt(mass * params.dx());
    for (auto &a : amps) {
        a *= scale;
    }
    return {params, std::move(amps)};
}

auto shift(const PointerGrid &p, double delta) -> PointerGrid {
    const auto &params = p.params();
    check_shift_guard(params, delta);
    if (delta == 0.0) {
        return p;
    }
    const std::size_t n = params.n_points;
    auto spectrum = fft({p.amplitudes().begin(), p.amplitudes().end()},
                    fourier::Direction::Forward);
    for (std::size_t m = 0; m < n; ++m) {
        const double phase = -params.bin_momentum(m) * delta / params.hbar;
        spectrum[m] *= std::polar(1.0 / static_cast<double>(n), phase);
    }
    return {params, fft(std::move(spectrum), fourier::Direction::Backward)};
}

auto to_momentum(const PointerGrid &p) -> MomentumGrid {
    const auto &params = p.params();
    const std::size_t n = params.n_points;
    auto spectrum = fft({p.amplitudes().begin(), p.amplitudes().end()},
                    fourier::Direction::Forward);
    // exp(-i p_k x_j/ħ) = (-1)^k exp(-2πi kj/n) because x_0 = -L/2.
    const double scale = params.dx() / std::sqrt(2.0 * kPi * params.hbar);
    MomentumGrid out{params, std::vector<cplx>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const long long signed_k =
            static_cast<long long>(k) - static_cast<long long>(n / 2);
        const double sign = (signed_k % 2 == 0) ? 1.0 : -1.0;
        out.amplitudes[k] = sign * scale * spectrum[fourier::bin_of(signed_k, n)];
    }
    return out;
}

auto from_momentum(const MomentumGrid &m) -> PointerGrid {
    const auto &params = m.params;
    const std::size_t n = params.n_points;
    const double scale = params.dx() / std::sqrt(2.0 * kPi * params.hbar);
    std::vector<cplx> spectrum(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long long signed_k =
            static_cast<long long>(k) - static_cast<long long>(n / 2);
        const double sign = (signed_k % 2 == 0) ? 1.0 : -1.0;
        spectrum[fourier::bin_of(signed_k, n)] =
            m.amplitudes[k] * sign / (scale * static_cast<double>(n));
    }
    return {params, fft(std::move(spectrum), fourier::Direction::Backward)};
}

auto moments(const PointerGrid &p) -> PointerMoments {
    const auto &params = p.params();
    PointerMoments out;

    double mass = 0.0;
    double sx = 0.0;
    double sxx = 0.0;
    for (std::size_t j = 0; j < params.n_points; ++j) {
        const double w = std::norm(p.amplitudes()[j]);
        const double x = params.position(j);
        mass += w;
        sx += w * x;
        sxx += w * x * x;
    }
    out.mean_x = sx / mass;
    out.var_x = sxx / mass - out.mean_x * out.mean_x;

    const auto mom = to_momentum(p);
    double pmass = 0.0;
    double sp = 0.0;
    double spp = 0.0;
    for (std::size_t k = 0; k < params.n_points; ++k) {
        const double w = std::norm(mom.amplitudes[k]);
        const double pk = params.momentum(k);
        pmass += w;
        sp += w * pk;
        spp += w * pk * pk;
    }
    out.mean_p = sp / pmass;
    out.var_p = spp / pmass - out.mean_p * out.mean_p;
    return out;
}

auto apply_momentum(const PointerGrid &p) -> PointerGrid {
    const auto &params = p.params();
    const std::size_t n = params.n_points;
    auto spectrum = fft({p.amplitudes().begin(), p.amplitudes().end()},
                    fourier::Direction::Forward);
    for (std::size_t m = 0; m < n; ++m) {
        spectrum[m] *= params.bin_momentum(m) / static_cast<double>(n);
    }
    return {params, fft(std::move(spectrum), fourier::Direction::Backward)};
}

auto phase_kick(const PointerGrid &p, double k) -> PointerGrid {
    const auto &params = p.params();
    std::vector<cplx> amps(p.amplitudes().begin(), p.amplitudes().end());
    for (std::size_t j = 0; j < amps.size(); ++j) {
        amps[j] *= std::polar(1.0, k * params.position(j) / params.hbar);
    }
    return {params, std::move(amps)};
}

} // namespace weakmeas
