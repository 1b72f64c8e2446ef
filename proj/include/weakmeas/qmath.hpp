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
 * Dense complex linear algebra on small Hilbert spaces.
 *
 * Tensor products use row-major ordering with the rightmost factor varying
 * fastest: for a ⊗ b the composite index is i_a * dim(b) + i_b. Every module
 * in the library shares this convention.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace weakmeas {

using cplx = std::complex<double>;

/// Column vector of complex amplitudes.
class Ket {
  public:
    Ket() = default;
    explicit Ket(std::vector<cplx> amplitudes);
    Ket(std::initializer_list<cplx> amplitudes);

    static auto basis(std::size_t dim, std::size_t index) -> Ket;

    [[nodiscard]] auto dim() const -> std::size_t { return amps_.size(); }
    [[nodiscard]] auto norm() const -> double;
    [[nodiscard]] auto normalized() const -> Ket;
    [[nodiscard]] auto is_normalized(double tol = 1e-12) const -> bool;

    [[nodiscard]] auto amplitudes() const -> std::span<const cplx> {
        return amps_;
    }
    auto operator[](std::size_t i) const -> const cplx & { return amps_[i]; }
    auto operator[](std::size_t i) -> cplx & { return amps_[i]; }

  private:
    std::vector<cplx> amps_;
};

/// ⟨a|b⟩, conjugate-linear in the first argument.
[[nodiscard]] auto inner(const Ket &a, const Ket &b) -> cplx;

/// Square complex matrix stored row-major.
class Operator {
  public:
    Operator() = default;
    explicit Operator(std::size_t dim);
    Operator(std::size_t dim, std::vector<cplx> entries);
    Operator(std::initializer_list<std::initializer_list<cplx>> rows);

    static auto identity(std::size_t dim) -> Operator;
    static auto zero(std::size_t dim) -> Operator { return Operator(dim); }

    [[nodiscard]] auto dim() const -> std::size_t { return dim_; }
    auto operator()(std::size_t r, std::size_t c) const -> const cplx & {
        return entries_[r * dim_ + c];
    }
    auto operator()(std::size_t r, std::size_t c) -> cplx & {
        return entries_[r * dim_ + c];
    }
    [[nodiscard]] auto entries() const -> std::span<const cplx> {
        return entries_;
    }

    [[nodiscard]] auto adjoint() const -> Operator;
    [[nodiscard]] auto trace() const -> cplx;
    /// max_ij |M_ij|
    [[nodiscard]] auto max_abs() const -> double;
    /// max_ij |M_ij - conj(M_ji)|
    [[nodiscard]] auto hermiticity_defect() const -> double;
    [[nodiscard]] auto apply(const Ket &psi) const -> Ket;

    auto operator+=(const Operator &rhs) -> Operator &;
    auto operator-=(const Operator &rhs) -> Operator &;
    auto operator*=(cplx s) -> Operator &;

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

[[nodiscard]] auto operator+(Operator a, const Operator &b) -> Operator;
[[nodiscard]] auto operator-(Operator a, const Operator &b) -> Operator;
[[nodiscard]] auto operator*(cplx s, Operator a) -> Operator;
[[nodiscard]] auto operator*(const Operator &a, const Operator &b) -> Operator;

/// Operator validated Hermitian at construction.
class HermitianOperator {
  public:
    HermitianOperator() = default;
    /// @throws NotHermitianError if the defect exceeds `tol`.
    explicit HermitianOperator(Operator op, double tol = 1e-10);

    [[nodiscard]] auto dim() const -> std::size_t { return op_.dim(); }
    [[nodiscard]] auto matrix() const -> const Operator & { return op_; }
    operator const Operator &() const { return op_; } // NOLINT

  private:
    Operator op_;
};

/// |k⟩⟨k|
[[nodiscard]] auto projector(const Ket &k) -> Operator;
/// |a⟩⟨b|
[[nodiscard]] auto outer(const Ket &a, const Ket &b) -> Operator;

[[nodiscard]] auto tensor(const Ket &a, const Ket &b) -> Ket;
[[nodiscard]] auto tensor(const Operator &a, const Operator &b) -> Operator;

/**
 * @brief Reduced operator on subsystem `keep` of a composite space.
 *
 * @param dims Subsystem dimensions, in tensor order.
 * @throws DimensionError if the dimensions do not multiply to rho.dim() or
 * `keep` is out of range.
 */
[[nodiscard]] auto partial_trace(const Operator &rho,
                                 std::span<const std::size_t> dims,
                                 std::size_t keep) -> Operator;

struct SpectralDecomposition {
    std::vector<double> eigenvalues; // descending
    std::vector<Ket> eigenvectors;
};

/// @throws NotHermitianError when the hermiticity defect exceeds 1e-10.
[[nodiscard]] auto herm_eig(const Operator &op) -> SpectralDecomposition;

/**
 * @brief Schmidt coefficients of a bipartite pure state.
 *
 * The amplitudes are read as a dim_a x dim_b row-major matrix. Returns the
 * min(dim_a, dim_b) singular values in descending order.
 */
[[nodiscard]] auto schmidt(const Ket &psi, std::size_t dim_a,
                           std::size_t dim_b) -> std::vector<double>;
/// Singular values of a rows x cols row-major amplitude matrix.
[[nodiscard]] auto singular_values(std::span<const cplx> matrix,
                                   std::size_t rows, std::size_t cols)
    -> std::vector<double>;

[[nodiscard]] auto expectation(const Operator &op, const Ket &psi) -> cplx;
[[nodiscard]] auto commutator(const Operator &a, const Operator &b)
    -> Operator;
[[nodiscard]] auto anticommutator(const Operator &a, const Operator &b)
    -> Operator;

namespace pauli {
[[nodiscard]] auto x() -> Operator;
[[nodiscard]] auto y() -> Operator;
[[nodiscard]] auto z() -> Operator;
} // namespace pauli

} // namespace weakmeas
