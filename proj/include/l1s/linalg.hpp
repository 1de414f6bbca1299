/**
 * Exact linear-algebra kernels over an arbitrary exact scalar: rank,
 * affine solve with null-space basis, column-independence tests, plus the
 * one floating-point utility (spectral norm by power iteration) shared by
 * the numeric layers.
 *
 * Elimination is fraction-free in the Bareiss style: every update is
 *
 *     M(i,j) <- (M(r,c) * M(i,j) - M(i,c) * M(r,j)) / prev
 *
 * where prev is the previous pivot, so intermediate entries stay division
 * exact and do not compound denominators.
 */

#ifndef L1S_LINALG_HPP
#define L1S_LINALG_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rational.hpp"

namespace l1s {

namespace detail {

/**
 * In-place fraction-free reduction to row echelon form.  Pivots are searched
 * in the leading `pivotLimit` columns only (rows are updated across their
 * full width, so trailing columns may carry an augmented right-hand side).
 * Returns the pivot columns in order; their count is the rank of the leading
 * block.  On exit every row at index >= rank is zero throughout the leading
 * `pivotLimit` columns.
 */
template <typename Scalar>
std::vector<Eigen::Index> fractionFreeEchelon(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& M,
    Eigen::Index pivotLimit)
{
    std::vector<Eigen::Index> pivotCols;
    const Eigen::Index rows = M.rows();
    const Eigen::Index cols = M.cols();
    Scalar prev(1);
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < pivotLimit && r < rows; ++c)
    {
        Eigen::Index p = r;
        while (p < rows && M(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            M.row(p).swap(M.row(r));
        for (Eigen::Index i = r + 1; i < rows; ++i)
        {
            for (Eigen::Index j = c + 1; j < cols; ++j)
                M(i, j) = (M(r, c) * M(i, j) - M(i, c) * M(r, j)) / prev;
            M(i, c) = 0;
        }
        prev = M(r, c);
        pivotCols.push_back(c);
        ++r;
    }
    return pivotCols;
}

}   // namespace detail

/// Exact rank.
template <typename Derived>
Eigen::Index rankOf(const Eigen::MatrixBase<Derived>& M)
{
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> work = M;
    return static_cast<Eigen::Index>(detail::fractionFreeEchelon(work, work.cols()).size());
}

/// General solution of M x = v: one particular solution plus a kernel basis.
template <typename Scalar>
struct AffineSolution
{
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> particular;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> kernel;   // basis vectors as columns
};

/**
 * Solve M x = v exactly.  Returns the empty optional iff the system is
 * inconsistent.  The particular solution sets all free variables to zero;
 * the kernel basis has one column per free variable.
 *
 * @throws std::invalid_argument on a row-count mismatch between M and v.
 */
template <typename DerivedA, typename DerivedB>
std::optional<AffineSolution<typename DerivedA::Scalar>> solveLinear(
    const Eigen::MatrixBase<DerivedA>& M, const Eigen::MatrixBase<DerivedB>& v)
{
    using Scalar = typename DerivedA::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    if (M.rows() != v.rows())
        throw std::invalid_argument("solveLinear: incompatible dimensions");

    const Eigen::Index rows = M.rows();
    const Eigen::Index cols = M.cols();
    Matrix work(rows, cols + 1);
    work.leftCols(cols) = M;
    work.col(cols) = v;
    const std::vector<Eigen::Index> pivotCols = detail::fractionFreeEchelon(work, cols);
    const Eigen::Index rank = static_cast<Eigen::Index>(pivotCols.size());
    for (Eigen::Index i = rank; i < rows; ++i)
    {
        if (work(i, cols) != 0)
            return std::nullopt;
    }

    std::vector<bool> isPivot(static_cast<std::size_t>(cols), false);
    for (const Eigen::Index c : pivotCols)
        isPivot[static_cast<std::size_t>(c)] = true;

    // Back substitution through the (still exact) echelon rows; free
    // variables are fixed up front.
    auto backSolve = [&](Vector& x)
    {
        for (Eigen::Index k = rank - 1; k >= 0; --k)
        {
            const Eigen::Index c = pivotCols[static_cast<std::size_t>(k)];
            Scalar acc = work(k, cols) * x(cols);
            for (Eigen::Index j = c + 1; j < cols; ++j)
                acc -= work(k, j) * x(j);
            x(c) = acc / work(k, c);
        }
    };

    AffineSolution<Scalar> out;
    out.particular = Vector::Zero(cols + 1);
    out.particular(cols) = Scalar(1);   // homogeneous coordinate: carry the rhs
    backSolve(out.particular);
    out.particular.conservativeResize(cols);

    Eigen::Index freeCount = cols - rank;
    out.kernel = Matrix::Zero(cols, freeCount);
    Eigen::Index k = 0;
    for (Eigen::Index c = 0; c < cols; ++c)
    {
        if (isPivot[static_cast<std::size_t>(c)])
            continue;
        Vector x = Vector::Zero(cols + 1);
        x(c) = Scalar(1);   // rhs coordinate stays 0: homogeneous solve
        backSolve(x);
        out.kernel.col(k++) = x.head(cols);
    }
    return out;
}

/**
 * Are the selected columns of M linearly independent?  The empty selection
 * is independent by convention.  Indices are zero-based.
 *
 * @throws std::out_of_range on a bad index.
 */
template <typename Derived>
bool columnsIndependent(const Eigen::MatrixBase<Derived>& M, const std::vector<int>& idx)
{
    using Scalar = typename Derived::Scalar;
    if (idx.empty())
        return true;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sub(M.rows(),
                                                              static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k)
    {
        if (idx[k] < 0 || idx[k] >= M.cols())
            throw std::out_of_range("columnsIndependent: column index out of range");
        sub.col(static_cast<Eigen::Index>(k)) = M.col(idx[k]);
    }
    return rankOf(sub) == static_cast<Eigen::Index>(idx.size());
}

/**
 * Spectral norm of a dense double matrix via power iteration on the smaller
 * Gram matrix, to relative tolerance `relTol` with an iteration cap.
 */
inline double spectralNorm(const Eigen::MatrixXd& M, double relTol = 1e-12,
                           int maxIter = 100000)
{
    if (M.rows() == 0 || M.cols() == 0)
        return 0.0;
    const Eigen::MatrixXd B = (M.rows() <= M.cols()) ? Eigen::MatrixXd(M * M.transpose())
                                                     : Eigen::MatrixXd(M.transpose() * M);
    if (B.cwiseAbs().maxCoeff() == 0.0)
        return 0.0;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(B.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) += 1e-3 * static_cast<double>(i);   // break symmetry deterministically
    v.normalize();
    double lambda = 0.0;
    for (int iter = 0; iter < maxIter; ++iter)
    {
        const Eigen::VectorXd w = B * v;
        const double norm = w.norm();
        if (norm == 0.0)
            return 0.0;
        const double next = v.dot(w);
        v = w / norm;
        if (iter > 0 && std::abs(next - lambda) <= relTol * std::abs(next))
        {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

}   // namespace l1s

#endif
