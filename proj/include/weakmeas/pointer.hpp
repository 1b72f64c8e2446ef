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
 * Gaussian measuring-device pointer sampled on a uniform position grid.
 *
 * The grid covers [-L/2, L/2) with n points, x_j = -L/2 + j dx, dx = L/n.
 * Momentum amplitudes follow the unitary convention
 *   ψ̃(p) = (2πħ)^{-1/2} ∫ ψ(x) exp(-ipx/ħ) dx,
 * evaluated by DFT on p_k = k dp, dp = 2πħ/L, k = -n/2 .. n/2-1, so that
 * Σ|ψ|² dx = Σ|ψ̃|² dp exactly.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weakmeas/qmath.hpp"

namespace weakmeas {

/// Shape and physical constants of a pointer grid.
struct GridParams {
    std::size_t n_points = 512;
    double extent = 16.0;
    double sigma = 1.0;
    double hbar = 1.0;

    [[nodiscard]] auto dx() const -> double {
        return extent / static_cast<double>(n_points);
    }
    [[nodiscard]] auto position(std::size_t j) const -> double {
        return -0.5 * extent + static_cast<double>(j) * dx();
    }
    [[nodiscard]] auto dp() const -> double;
    /// Momentum of ascending-order index k (0 ↔ -n/2 dp).
    [[nodiscard]] auto momentum(std::size_t k) const -> double;
    /// Momentum carried by raw FFT bin m.
    [[nodiscard]] auto bin_momentum(std::size_t m) const -> double;

    auto operator==(const GridParams &) const -> bool = default;
};

/// Validates n (power of two, ≥ 2), extent, sigma, hbar; throws
/// ValidationError or GridExtentError (extent < 16 sigma).
void validate_grid(const GridParams &params);

/// Position-space pointer wavefunction.
class PointerGrid {
  public:
    PointerGrid(GridParams params, std::vector<cplx> amplitudes);

    [[nodiscard]] auto params() const -> const GridParams & { return params_; }
    [[nodiscard]] auto amplitudes() const -> std::span<const cplx> {
        return amps_;
    }
    [[nodiscard]] auto size() const -> std::size_t { return amps_.size(); }
    /// Σ_j |ψ_j|² dx
    [[nodiscard]] auto norm_squared() const -> double;

  private:
    GridParams params_;
    std::vector<cplx> amps_;
};

/// Momentum-space amplitudes on ascending momenta p_k = (k - n/2) dp.
struct MomentumGrid {
    GridParams params;
    std::vector<cplx> amplitudes;

    [[nodiscard]] auto norm_squared() const -> double;
};

struct PointerMoments {
    double mean_x = 0.0;
    double var_x = 0.0;
    double mean_p = 0.0;
    double var_p = 0.0;
};

/**
 * @brief Samples (1/(√(2π)σ))^{1/2} exp(-x²/4σ²) on the grid and
 * renormalizes so that Σ|ψ|²dx = 1 holds on the grid itself.
 *
 * @throws GridExtentError if extent < 16 sigma.
 */
[[nodiscard]] auto gaussian_pointer(double sigma, std::size_t n_points,
                                    double extent, double hbar = 1.0)
    -> PointerGrid;

/**
 * @brief Translates the wavefunction by `delta` using the Fourier shift
 * theorem, ψ(x) → ψ(x - delta).
 *
 * @throws GridExtentError if |delta| + 6 sigma > extent/2.
 */
[[nodiscard]] auto shift(const PointerGrid &p, double delta) -> PointerGrid;

[[nodiscard]] auto to_momentum(const PointerGrid &p) -> MomentumGrid;
[[nodiscard]] auto from_momentum(const MomentumGrid &m) -> PointerGrid;

[[nodiscard]] auto moments(const PointerGrid &p) -> PointerMoments;

/// π̂ψ evaluated spectrally. The result is not normalized.
[[nodiscard]] auto apply_momentum(const PointerGrid &p) -> PointerGrid;

/// Multiplies ψ(x) by exp(i k x/ħ), boosting the mean momentum by k.
[[nodiscard]] auto phase_kick(const PointerGrid &p, double k) -> PointerGrid;

/// Checks the translation guard |delta| + 6 sigma ≤ extent/2.
void check_shift_guard(const GridParams &params, double delta);

} // namespace weakmeas
