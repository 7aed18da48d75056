#pragma once

// Exact linear algebra over any field-valued Eigen scalar (Rational,
// RationalFunction). Pivoting is structural (first nonzero entry), never
// magnitude-based, so the results are exact.

#include "poisson/errors.hpp"
#include "poisson/rational.hpp"

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace poisson::linalg {

template <typename Scalar>
struct Echelon {
    MatrixX<Scalar> reduced;            ///< reduced row echelon form
    std::vector<Eigen::Index> pivots;   ///< pivot column of each nonzero row
};

template <typename Derived>
Echelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    const Scalar zero(0);
    MatrixX<Scalar> m = input;
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index pivot = row;
        while (pivot < m.rows() && m(pivot, col) == zero) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row) m.row(pivot).swap(m.row(row));
        const Scalar inv = Scalar(1) / m(row, col);
        for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == zero) continue;
            const Scalar factor = m(i, col);
            for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
    return static_cast<Eigen::Index>(rref(m).pivots.size());
}

/// Columns form a basis of {v : m v = 0}. Each basis vector has a 1 in one
/// free column and zeros in the other free columns, so coordinate subspaces
/// come out as unit vectors.
template <typename Derived>
MatrixX<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const auto ech = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

    MatrixX<Scalar> basis = MatrixX<Scalar>::Constant(m.cols(), static_cast<Eigen::Index>(free_cols.size()), Scalar(0));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const auto f = free_cols[k];
        const auto kk = static_cast<Eigen::Index>(k);
        basis(f, kk) = Scalar(1);
        for (std::size_t r = 0; r < ech.pivots.size(); ++r)
            basis(ech.pivots[r], kk) = -ech.reduced(static_cast<Eigen::Index>(r), f);
    }
    return basis;
}

template <typename Derived>
MatrixX<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    if (m.rows() != m.cols()) throw MathError("inverse of a non-square matrix");
    const Eigen::Index n = m.rows();
    MatrixX<Scalar> aug(n, 2 * n);
    aug.leftCols(n) = m;
    aug.rightCols(n) = MatrixX<Scalar>::Identity(n, n);
    auto ech = rref(aug);
    if (static_cast<Eigen::Index>(ech.pivots.size()) < n || (n > 0 && ech.pivots[static_cast<std::size_t>(n - 1)] != n - 1))
        throw MathError("matrix is singular");
    return ech.reduced.rightCols(n);
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    if (input.rows() != input.cols()) throw MathError("determinant of a non-square matrix");
    MatrixX<Scalar> m = input;
    Scalar det(1);
    const Scalar zero(0);
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        Eigen::Index pivot = col;
        while (pivot < m.rows() && m(pivot, col) == zero) ++pivot;
        if (pivot == m.rows()) return zero;
        if (pivot != col) {
            m.row(pivot).swap(m.row(col));
            det = -det;
        }
        det = det * m(col, col);
        const Scalar inv = Scalar(1) / m(col, col);
        for (Eigen::Index i = col + 1; i < m.rows(); ++i) {
            if (m(i, col) == zero) continue;
            const Scalar factor = m(i, col) * inv;
            for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(col, j);
        }
    }
    return det;
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (!(m(i, j) == m(j, i))) return false;
    return true;
}

/// Sylvester's criterion on an ordered scalar: all leading principal minors > 0.
template <typename Derived>
bool is_positive_definite(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    if (!is_symmetric(m)) return false;
    for (Eigen::Index k = 1; k <= m.rows(); ++k)
        if (!(determinant(m.topLeftCorner(k, k)) > Scalar(0))) return false;
    return true;
}

/// dim(span A ∩ span B) for column-spanned subspaces of the same ambient space.
template <typename DA, typename DB>
Eigen::Index intersection_dimension(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    using Scalar = typename DA::Scalar;
    MatrixX<Scalar> joined(a.rows(), a.cols() + b.cols());
    joined << a, b;
    return rank(a) + rank(b) - rank(joined);
}

/// A maximal linearly independent subset of the columns of m, in order.
template <typename Derived>
MatrixX<typename Derived::Scalar> column_basis(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const auto ech = rref(m);
    MatrixX<Scalar> out(m.rows(), static_cast<Eigen::Index>(ech.pivots.size()));
    for (std::size_t k = 0; k < ech.pivots.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(ech.pivots[k]);
    return out;
}

}  // namespace poisson::linalg
