#include "l1s/simplex.hpp"

#include <stdexcept>
#include <utility>

namespace l1s {

void LinearSystem::addEquality(VectorXr coeff, Rational rhs)
{
    if (coeff.size() != dim)
        throw std::invalid_argument("LinearSystem: coefficient dimension mismatch");
    equalities.push_back({std::move(coeff), std::move(rhs)});
}

void LinearSystem::addInequality(VectorXr coeff, Rational rhs)
{
    if (coeff.size() != dim)
        throw std::invalid_argument("LinearSystem: coefficient dimension mismatch");
    inequalities.push_back({std::move(coeff), std::move(rhs)});
}

bool LinearSystem::contains(const VectorXr& z) const
{
    if (z.size() != dim)
        throw std::invalid_argument("LinearSystem::contains: dimension mismatch");
    for (const LinearConstraint& c : equalities)
    {
        if (c.coeff.dot(z) != c.rhs)
            return false;
    }
    for (const LinearConstraint& c : inequalities)
    {
        if (c.coeff.dot(z) > c.rhs)
            return false;
    }
    return true;
}

namespace {

/**
 * Full-tableau simplex on min c . w  s.t.  A w = rhs, w >= 0, rhs >= 0.
 *
 * Row 0 of the tableau carries reduced costs (and minus the objective value
 * in its rhs cell); rows 1..m carry the constraints.  Artificial variables
 * occupy the trailing column block and form the initial basis; they are
 * never allowed to re-enter.
 */
class SimplexTableau
{
    public:
        SimplexTableau(const MatrixXr& A, const VectorXr& rhs)
            : rows_(static_cast<int>(A.rows())), cols_(static_cast<int>(A.cols()))
        {
            T_ = MatrixXr::Zero(rows_ + 1, cols_ + rows_ + 1);
            basis_.resize(rows_);
            for (int i = 0; i < rows_; ++i)
            {
                T_.block(i + 1, 0, 1, cols_) = A.row(i);
                T_(i + 1, cols_ + i) = 1;
                T_(i + 1, T_.cols() - 1) = rhs(i);
                basis_[i] = cols_ + i;
            }
        }

        /// Minimize the artificial sum; returns the optimal value.
        Rational phaseOne()
        {
            const int last = static_cast<int>(T_.cols()) - 1;
            for (int j = 0; j <= last; ++j)
            {
                Rational sum = 0;
                for (int i = 1; i <= rows_; ++i)
                    sum += T_(i, j);
                T_(0, j) = (j >= cols_ && j < last) ? Rational(0) : Rational(-sum);
            }
            run();
            return -T_(0, last);
        }

        /// Replace any artificial still in the basis at value 0, dropping
        /// rows that turn out redundant.  Call only after phaseOne() == 0.
        void driveOutArtificials()
        {
            for (int i = rows_; i >= 1; --i)
            {
                if (basis_[i - 1] < cols_)
                    continue;
                int enter = -1;
                for (int j = 0; j < cols_; ++j)
                {
                    if (T_(i, j) != 0)
                    {
                        enter = j;
                        break;
                    }
                }
                if (enter >= 0)
                {
                    pivot(i, enter);
                }
                else
                {
                    removeRow(i);   // all-zero structural row: redundant constraint
                }
            }
        }

        /// Minimize cost . w from the current feasible basis.  Returns false
        /// on an unbounded objective.
        bool phaseTwo(const VectorXr& cost)
        {
            const int last = static_cast<int>(T_.cols()) - 1;
            for (int j = 0; j <= last; ++j)
            {
                Rational reduced = (j < cols_) ? cost(j) : Rational(0);
                for (int i = 1; i <= rows_; ++i)
                {
                    if (basis_[i - 1] < cols_)
                        reduced -= cost(basis_[i - 1]) * T_(i, j);
                }
                T_(0, j) = reduced;
            }
            return run();
        }

        /// Values of the structural variables at the current basis.
        VectorXr solution() const
        {
            VectorXr w = VectorXr::Zero(cols_);
            const int last = static_cast<int>(T_.cols()) - 1;
            for (int i = 0; i < rows_; ++i)
            {
                if (basis_[i] < cols_)
                    w(basis_[i]) = T_(i + 1, last);
            }
            return w;
        }

    private:
        /// Bland's rule: entering variable is the lowest-index structural
        /// column with a negative reduced cost; the leaving row minimizes the
        /// ratio, ties broken by the lowest basic variable index.  Returns
        /// false when an improving column is unbounded below.
        bool run()
        {
            const int last = static_cast<int>(T_.cols()) - 1;
            while (true)
            {
                int enter = -1;
                for (int j = 0; j < cols_; ++j)
                {
                    if (T_(0, j) < 0)
                    {
                        enter = j;
                        break;
                    }
                }
                if (enter < 0)
                    return true;
                int leave = -1;
                Rational bestNum, bestDen;
                for (int i = 1; i <= rows_; ++i)
                {
                    if (T_(i, enter) <= 0)
                        continue;
                    // compare T_(i,last)/T_(i,enter) with best via cross products
                    if (leave < 0 || T_(i, last) * bestDen < bestNum * T_(i, enter)
                        || (T_(i, last) * bestDen == bestNum * T_(i, enter)
                            && basis_[i - 1] < basis_[leave - 1]))
                    {
                        leave = i;
                        bestNum = T_(i, last);
                        bestDen = T_(i, enter);
                    }
                }
                if (leave < 0)
                    return false;
                pivot(leave, enter);
            }
        }

        void pivot(int row, int col)
        {
            T_.row(row) /= T_(row, col);
            for (int i = 0; i <= rows_; ++i)
            {
                if (i == row || T_(i, col) == 0)
                    continue;
                T_.row(i) -= T_(i, col) * T_.row(row);
            }
            basis_[row - 1] = col;
        }

        void removeRow(int row)
        {
            const Eigen::Index nr = T_.rows();
            if (row < nr - 1)
                T_.block(row, 0, nr - 1 - row, T_.cols()) =
                    T_.block(row + 1, 0, nr - 1 - row, T_.cols()).eval();
            T_.conservativeResize(nr - 1, Eigen::NoChange);
            basis_.erase(basis_.begin() + (row - 1));
            --rows_;
        }

        MatrixXr T_;
        std::vector<int> basis_;
        int rows_;
        int cols_;
};

/// Standard-form data: free variables split as z = u - v, one slack per
/// inequality, rows sign-flipped to a nonnegative right-hand side.
struct StandardForm
{
    MatrixXr A;
    VectorXr rhs;
    int dim;
    int slacks;
};

StandardForm toStandardForm(const LinearSystem& sys)
{
    const int d = sys.dim;
    const int K = static_cast<int>(sys.inequalities.size());
    const int rows = static_cast<int>(sys.equalities.size()) + K;
    StandardForm sf;
    sf.dim = d;
    sf.slacks = K;
    sf.A = MatrixXr::Zero(rows, 2 * d + K);
    sf.rhs = VectorXr::Zero(rows);
    int r = 0;
    for (const LinearConstraint& c : sys.equalities)
    {
        for (int j = 0; j < d; ++j)
        {
            sf.A(r, j) = c.coeff(j);
            sf.A(r, d + j) = -c.coeff(j);
        }
        sf.rhs(r) = c.rhs;
        ++r;
    }
    int k = 0;
    for (const LinearConstraint& c : sys.inequalities)
    {
        for (int j = 0; j < d; ++j)
        {
            sf.A(r, j) = c.coeff(j);
            sf.A(r, d + j) = -c.coeff(j);
        }
        sf.A(r, 2 * d + k) = 1;
        sf.rhs(r) = c.rhs;
        ++r;
        ++k;
    }
    for (int i = 0; i < rows; ++i)
    {
        if (sf.rhs(i) < 0)
        {
            sf.A.row(i) = -sf.A.row(i);
            sf.rhs(i) = -sf.rhs(i);
        }
    }
    return sf;
}

VectorXr structuralToPoint(const VectorXr& w, int d)
{
    return w.head(d) - w.segment(d, d);
}

}   // anonymous namespace

LpOutcome lpSolve(const VectorXr& objective, LpSense sense, const LinearSystem& sys)
{
    if (objective.size() != sys.dim)
        throw std::invalid_argument("lpSolve: objective dimension mismatch");
    const StandardForm sf = toStandardForm(sys);
    SimplexTableau tableau(sf.A, sf.rhs);
    LpOutcome out;
    if (tableau.phaseOne() > 0)
    {
        out.status = LpStatus::Infeasible;
        return out;
    }
    tableau.driveOutArtificials();

    VectorXr cost = VectorXr::Zero(2 * sf.dim + sf.slacks);
    const Rational flip = (sense == LpSense::Maximize) ? Rational(-1) : Rational(1);
    for (int j = 0; j < sf.dim; ++j)
    {
        cost(j) = flip * objective(j);
        cost(sf.dim + j) = -flip * objective(j);
    }
    if (!tableau.phaseTwo(cost))
    {
        out.status = LpStatus::Unbounded;
        return out;
    }
    out.status = LpStatus::Optimal;
    out.point = structuralToPoint(tableau.solution(), sf.dim);
    out.optimum = objective.dot(out.point);
    return out;
}

std::optional<VectorXr> feasiblePoint(const LinearSystem& sys)
{
    const StandardForm sf = toStandardForm(sys);
    SimplexTableau tableau(sf.A, sf.rhs);
    if (tableau.phaseOne() > 0)
        return std::nullopt;
    tableau.driveOutArtificials();
    return structuralToPoint(tableau.solution(), sf.dim);
}

bool isFeasible(const LinearSystem& sys)
{
    return feasiblePoint(sys).has_value();
}

std::optional<VectorXr> strictInteriorPoint(
    const std::vector<LinearConstraint>& equalities,
    const std::vector<LinearConstraint>& strictInequalities, int dim)
{
    LinearSystem sys(dim + 1);   // last variable is the shared slack t
    for (const LinearConstraint& c : equalities)
    {
        VectorXr coeff = VectorXr::Zero(dim + 1);
        coeff.head(dim) = c.coeff;
        sys.addEquality(std::move(coeff), c.rhs);
    }
    for (const LinearConstraint& c : strictInequalities)
    {
        VectorXr coeff = VectorXr::Zero(dim + 1);
        coeff.head(dim) = c.coeff;
        coeff(dim) = 1;
        sys.addInequality(std::move(coeff), c.rhs);
    }
    VectorXr cap = VectorXr::Zero(dim + 1);
    cap(dim) = 1;
    sys.addInequality(cap, Rational(1));

    VectorXr objective = VectorXr::Zero(dim + 1);
    objective(dim) = 1;
    const LpOutcome out = lpSolve(objective, LpSense::Maximize, sys);
    if (out.status != LpStatus::Optimal || out.point(dim) <= 0)
        return std::nullopt;
    return VectorXr(out.point.head(dim));
}

}   // namespace l1s
