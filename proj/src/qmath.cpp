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

#include "weakmeas/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "weakmeas/errors.hpp"

namespace weakmeas {

namespace {

using MatrixXcdRM =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(a) + " vs " + std::to_string(b) +
                             ")");
    }
}

} // namespace

// ---- Ket ------------------------------------------------------------------

Ket::Ket(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {}

Ket::Ket(std::initializer_list<cplx> amplitudes) : amps_(amplitudes) {}

auto Ket::basis(std::size_t dim, std::size_t index) -> Ket {
    if (index >= dim) {
        throw DimensionError("basis index " + std::to_string(index) +
                             " out of range for dimension " +
                             std::to_string(dim));
    }
    std::vector<cplx> v(dim, 0.0);
    v[index] = 1.0;
    return Ket(std::move(v));
}

auto Ket::norm() const -> double {
    double s = 0.0;
    for (const auto &c : amps_) {
        s += std::norm(c);
    }
    return std::sqrt(s);
}

auto Ket::normalized() const -> Ket {
    const double n = norm();
    if (n == 0.0) {
        throw NormalizationError("cannot normalize the zero vector");
    }
    std::vector<cplx> v(amps_);
    for (auto &c : v) {
        c /= n;
    }
    return Ket(std::move(v));
}

auto Ket::is_normalized(double tol) const -> bool {
    return std::abs(norm() - 1.0) <= tol;
}

auto inner(const Ket &a, const Ket &b) -> cplx {
    require_same_dim(a.dim(), b.dim(), "inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

// ---- Operator -------------------------------------------------------------

Operator::Operator(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}

Operator::Operator(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw DimensionError("operator entries do not form a " +
                             std::to_string(dim_) + "x" +
                             std::to_string(dim_) + " matrix");
    }
}

Operator::Operator(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw DimensionError("operator rows must form a square matrix");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

auto Operator::identity(std::size_t dim) -> Operator {
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        op(i, i) = 1.0;
    }
    return op;
}

auto Operator::adjoint() const -> Operator {
    Operator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

auto Operator::trace() const -> cplx {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

auto Operator::max_abs() const -> double {
    double m = 0.0;
    for (const auto &e : entries_) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

auto Operator::hermiticity_defect() const -> double {
    double m = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return m;
}

auto Operator::apply(const Ket &psi) const -> Ket {
    require_same_dim(dim_, psi.dim(), "apply");
    std::vector<cplx> out(dim_, 0.0);
    for (std::size_t r = 0; r < dim_; ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) {
            s += (*this)(r, c) * psi[c];
        }
        out[r] = s;
    }
    return Ket(std::move(out));
}

auto Operator::operator+=(const Operator &rhs) -> Operator & {
    require_same_dim(dim_, rhs.dim_, "operator+");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += rhs.entries_[i];
    }
    return *this;
}

auto Operator::operator-=(const Operator &rhs) -> Operator & {
    require_same_dim(dim_, rhs.dim_, "operator-");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= rhs.entries_[i];
    }
    return *this;
}

auto Operator::operator*=(cplx s) -> Operator & {
    for (auto &e : entries_) {
        e *= s;
    }
    return *this;
}

auto operator+(Operator a, const Operator &b) -> Operator { return a += b; }
auto operator-(Operator a, const Operator &b) -> Operator { return a -= b; }
auto operator*(cplx s, Operator a) -> Operator { return a *= s; }

auto operator*(const Operator &a, const Operator &b) -> Operator {
    require_same_dim(a.dim(), b.dim(), "operator*");
    const std::size_t d = a.dim();
    Operator out(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) {
            const cplx ark = a(r, k);
            for (std::size_t c = 0; c < d; ++c) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

HermitianOperator::HermitianOperator(Operator op, double tol)
    : op_(std::move(op)) {
    const double defect = op_.hermiticity_defect();
    if (!(defect <= tol)) {
        throw NotHermitianError("operator is not Hermitian (defect " +
                                std::to_string(defect) + ")");
    }
}

// ---- constructions --------------------------------------------------------

auto projector(const Ket &k) -> Operator { return outer(k, k); }

auto outer(const Ket &a, const Ket &b) -> Operator {
    require_same_dim(a.dim(), b.dim(), "outer");
    Operator out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < b.dim(); ++c) {
            out(r, c) = a[r] * std::conj(b[c]);
        }
    }
    return out;
}

auto tensor(const Ket &a, const Ket &b) -> Ket {
    std::vector<cplx> out;
    out.reserve(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out.push_back(a[i] * b[j]);
        }
    }
    return Ket(std::move(out));
}

auto tensor(const Operator &a, const Operator &b) -> Operator {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    Operator out(da * db);
    for (std::size_t ra = 0; ra < da; ++ra) {
        for (std::size_t ca = 0; ca < da; ++ca) {
            const cplx s = a(ra, ca);
            for (std::size_t rb = 0; rb < db; ++rb) {
                for (std::size_t cb = 0; cb < db; ++cb) {
                    out(ra * db + rb, ca * db + cb) = s * b(rb, cb);
                }
            }
        }
    }
    return out;
}

auto partial_trace(const Operator &rho, std::span<const std::size_t> dims,
                   std::size_t keep) -> Operator {
    if (keep >= dims.size()) {
        throw DimensionError("partial_trace: subsystem index out of range");
    }
    const std::size_t total = std::accumulate(
        dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    require_same_dim(total, rho.dim(), "partial_trace");

    // View the space as pre ⊗ kept ⊗ post.
    const std::size_t kept = dims[keep];
    const std::size_t pre = std::accumulate(dims.begin(), dims.begin() + keep,
                                            std::size_t{1}, std::multiplies<>());
    const std::size_t post = total / (pre * kept);

    Operator out(kept);
    for (std::size_t i = 0; i < kept; ++i) {
        for (std::size_t j = 0; j < kept; ++j) {
            cplx s = 0.0;
            for (std::size_t a = 0; a < pre; ++a) {
                for (std::size_t b = 0; b < post; ++b) {
                    s += rho((a * kept + i) * post + b, (a * kept + j) * post + b);
                }
            }
            out(i, j) = s;
        }
    }
    return out;
}

// ---- spectral -------------------------------------------------------------

auto herm_eig(const Operator &op) -> SpectralDecomposition {
    if (!(op.hermiticity_defect() <= 1e-10)) {
        throw NotHermitianError("herm_eig: operator is not Hermitian");
    }
    const auto d = static_cast<Eigen::Index>(op.dim());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            // Symmetrize so round-off in the input cannot leak into the
            // solver, which only reads the lower triangle.
            m(r, c) = 0.5 * (op(r, c) + std::conj(op(c, r)));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error("herm_eig: eigensolver failed to converge");
    }

    SpectralDecomposition out;
    out.eigenvalues.reserve(op.dim());
    out.eigenvectors.reserve(op.dim());
    // Eigen returns ascending order.
    for (Eigen::Index k = d - 1; k >= 0; --k) {
        out.eigenvalues.push_back(solver.eigenvalues()(k));
        std::vector<cplx> v(op.dim());
        for (Eigen::Index i = 0; i < d; ++i) {
            v[i] = solver.eigenvectors()(i, k);
        }
        // Fix the phase: the first component of maximal modulus is made
        // real and positive.
        std::size_t pivot = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (std::abs(v[i]) > best + 1e-12) {
                best = std::abs(v[i]);
                pivot = i;
            }
        }
        const cplx phase = std::conj(v[pivot]) / std::abs(v[pivot]);
        for (auto &c : v) {
            c *= phase;
        }
        out.eigenvectors.emplace_back(std::move(v));
    }
    return out;
}

auto singular_values(std::span<const cplx> matrix, std::size_t rows,
                     std::size_t cols) -> std::vector<double> {
    if (rows * cols != matrix.size()) {
        throw DimensionError("singular_values: " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " does not match " +
                             std::to_string(matrix.size()) + " amplitudes");
    }
    Eigen::Map<const MatrixXcdRM> m(matrix.data(),
                                    static_cast<Eigen::Index>(rows),
                                    static_cast<Eigen::Index>(cols));
    Eigen::VectorXd s;
    if (rows <= 16 || cols <= 16) {
        // Thin side is tiny: Jacobi on the tall orientation is exact and fast.
        if (rows >= cols) {
            s = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
        } else {
            s = Eigen::JacobiSVD<Eigen::MatrixXcd>(m.adjoint())
                    .singularValues();
        }
    } else {
        s = Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues();
    }
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

auto schmidt(const Ket &psi, std::size_t dim_a, std::size_t dim_b)
    -> std::vector<double> {
    if (dim_a * dim_b != psi.dim()) {
        throw DimensionError("schmidt: " + std::to_string(dim_a) + "*" +
                             std::to_string(dim_b) + " != " +
                             std::to_string(psi.dim()));
    }
    return singular_values(psi.amplitudes(), dim_a, dim_b);
}

auto expectation(const Operator &op, const Ket &psi) -> cplx {
    require_same_dim(op.dim(), psi.dim(), "expectation");
    return inner(psi, op.apply(psi));
}

auto commutator(const Operator &a, const Operator &b) -> Operator {
    return a * b - b * a;
}

auto anticommutator(const Operator &a, const Operator &b) -> Operator {
    return a * b + b * a;
}

namespace pauli {
auto x() -> Operator { return Operator{{0.0, 1.0}, {1.0, 0.0}}; }
auto y() -> Operator {
    return Operator{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}};
}
auto z() -> Operator { return Operator{{1.0, 0.0}, {0.0, -1.0}}; }
} // namespace pauli

} // namespace weakmeas
