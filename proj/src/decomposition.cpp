#include "l1s/decomposition.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "l1s/exceptions.hpp"
#include "l1s/linalg.hpp"

namespace l1s {

namespace {

// Variable layout of S_F systems: z = (lambda, b_1..b_m, x_1..x_n).

VectorXr sConeRow(int m, int n, const Rational& lambdaCoeff, const VectorXr& bCoeff,
                  const VectorXr& xCoeff)
{
    VectorXr z = VectorXr::Zero(1 + m + n);
    z(0) = lambdaCoeff;
    if (bCoeff.size() > 0)
        z.segment(1, m) = bCoeff;
    if (xCoeff.size() > 0)
        z.segment(1 + m, n) = xCoeff;
    return z;
}

LinearSystem buildSCone(const MatrixXr& A, const SignPartition& partition)
{
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    LinearSystem sys(1 + m + n);
    const VectorXr noB, noX;

    VectorXr lambdaNonneg = sConeRow(m, n, Rational(-1), noB, noX);
    sys.addInequality(std::move(lambdaNonneg), Rational(0));

    auto residualCoeffs = [&](int i) -> std::pair<VectorXr, VectorXr>
    {
        // A_i^T (b - A x) as a linear form: b part A_i, x part -(A^T A_i).
        return {A.col(i), VectorXr(-(A.transpose() * A.col(i)))};
    };

    for (int i : partition.plus)
    {
        VectorXr ei = VectorXr::Zero(n);
        ei(i) = -1;
        sys.addInequality(sConeRow(m, n, Rational(0), noB, ei), Rational(0));   // x_i >= 0
        auto [bc, xc] = residualCoeffs(i);
        sys.addEquality(sConeRow(m, n, Rational(-1), bc, xc), Rational(0));     // A_i^T(b-Ax) = lambda
    }
    for (int i : partition.zero)
    {
        VectorXr ei = VectorXr::Zero(n);
        ei(i) = 1;
        sys.addEquality(sConeRow(m, n, Rational(0), noB, ei), Rational(0));     // x_i = 0
        auto [bc, xc] = residualCoeffs(i);
        sys.addInequality(sConeRow(m, n, Rational(-1), bc, xc), Rational(0));   // A_i^T(b-Ax) <= lambda
        sys.addInequality(sConeRow(m, n, Rational(-1), VectorXr(-bc), VectorXr(-xc)),
                          Rational(0));                                         // -A_i^T(b-Ax) <= lambda
    }
    for (int i : partition.minus)
    {
        VectorXr ei = VectorXr::Zero(n);
        ei(i) = 1;
        sys.addInequality(sConeRow(m, n, Rational(0), noB, ei), Rational(0));   // x_i <= 0
        auto [bc, xc] = residualCoeffs(i);
        sys.addEquality(sConeRow(m, n, Rational(1), bc, xc), Rational(0));      // A_i^T(b-Ax) = -lambda
    }
    return sys;
}

/// Is g a conic combination of the given generators?
bool inConicHull(const VectorXr& g, const std::vector<VectorXr>& generators)
{
    if (generators.empty())
        return g.cwiseAbs().maxCoeff() == 0;
    LinearSystem sys(static_cast<int>(generators.size()));
    for (Eigen::Index r = 0; r < g.size(); ++r)
    {
        VectorXr coeff(static_cast<Eigen::Index>(generators.size()));
        for (std::size_t k = 0; k < generators.size(); ++k)
            coeff(static_cast<Eigen::Index>(k)) = generators[k](r);
        sys.addEquality(std::move(coeff), g(r));
    }
    for (std::size_t k = 0; k < generators.size(); ++k)
    {
        VectorXr coeff = VectorXr::Zero(static_cast<Eigen::Index>(generators.size()));
        coeff(static_cast<Eigen::Index>(k)) = -1;
        sys.addInequality(std::move(coeff), Rational(0));
    }
    return isFeasible(sys);
}

std::vector<VectorXr> dGeneratorsOf(const MatrixXr& A, const Face& face)
{
    const int m = static_cast<int>(A.rows());
    std::vector<VectorXr> gens;
    auto lifted = [m](const Rational& head, const VectorXr& tail)
    {
        VectorXr g(1 + m);
        g(0) = head;
        g.tail(m) = tail;
        return g;
    };
    for (int i : face.partition.plus)
        gens.push_back(lifted(Rational(0), A.col(i)));
    for (int i : face.partition.minus)
        gens.push_back(lifted(Rational(0), VectorXr(-A.col(i))));
    for (const VectorXr& v : face.vertices)
        gens.push_back(lifted(Rational(1), v));

    // Drop superfluous generators: g is redundant iff it is a conic
    // combination of the others.  First-index-first removal keeps the
    // result deterministic.
    bool removed = true;
    while (removed)
    {
        removed = false;
        for (std::size_t k = 0; k < gens.size(); ++k)
        {
            std::vector<VectorXr> rest;
            rest.reserve(gens.size() - 1);
            for (std::size_t j = 0; j < gens.size(); ++j)
            {
                if (j != k)
                    rest.push_back(gens[j]);
            }
            if (inConicHull(gens[k], rest))
            {
                gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(k));
                removed = true;
                break;
            }
        }
    }
    return gens;
}

/// Closed-form Lipschitz constant kappa = ||(At A)^-1 At [-s, E]|| for faces
/// with independent active columns; 0 for the whole polytope.
std::optional<double> faceLipschitz(const MatrixXr& A, const Face& face)
{
    const std::vector<int> active = face.partition.active();
    if (active.empty())
        return 0.0;
    if (!face.inF0)
        return std::nullopt;
    const int m = static_cast<int>(A.rows());
    const int k = static_cast<int>(active.size());
    MatrixXr sub(m, k);
    VectorXr sign(k);
    for (int r = 0; r < k; ++r)
    {
        sub.col(r) = A.col(active[static_cast<std::size_t>(r)]);
        const bool isPlus = std::find(face.partition.plus.begin(), face.partition.plus.end(),
                                      active[static_cast<std::size_t>(r)])
                            != face.partition.plus.end();
        sign(r) = isPlus ? Rational(1) : Rational(-1);
    }
    const MatrixXr gram = sub.transpose() * sub;
    MatrixXr rhs(k, 1 + m);
    rhs.col(0) = -sign;                   // -A~^T y is constant on F: the sign vector
    rhs.rightCols(m) = sub.transpose();
    MatrixXr solved(k, 1 + m);
    for (int c = 0; c < 1 + m; ++c)
    {
        const auto sol = solveLinear(gram, VectorXr(rhs.col(c)));
        solved.col(c) = sol->particular;
    }
    return spectralNorm(solved.cast<double>());
}

/// S_F rows with (lambda, b) substituted.  Constant rows fold into the two
/// feasibility flags instead of being kept.
struct InstantiatedCone
{
    bool closedFeasible = true;    // constant rows hold non-strictly
    bool strictFeasible = true;    // constant inequality rows hold strictly
    std::vector<LinearConstraint> equalities;
    std::vector<LinearConstraint> inequalities;
};

InstantiatedCone instantiateRows(const DecompositionCell& cell, const Rational& lambda,
                                 const VectorXr& b)
{
    const int m = static_cast<int>(b.size());
    const int n = static_cast<int>(cell.sCone.system.dim) - 1 - m;
    InstantiatedCone out;
    auto split = [&](const LinearConstraint& row) -> LinearConstraint
    {
        Rational rhs = row.rhs - row.coeff(0) * lambda;
        for (int j = 0; j < m; ++j)
            rhs -= row.coeff(1 + j) * b(j);
        return {VectorXr(row.coeff.tail(n)), rhs};
    };
    for (const LinearConstraint& row : cell.sCone.system.equalities)
    {
        LinearConstraint c = split(row);
        if (c.coeff.cwiseAbs().maxCoeff() == 0)
        {
            if (c.rhs != 0)
            {
                out.closedFeasible = false;
                out.strictFeasible = false;
            }
            continue;
        }
        out.equalities.push_back(std::move(c));
    }
    for (const LinearConstraint& row : cell.sCone.system.inequalities)
    {
        LinearConstraint c = split(row);
        if (c.coeff.cwiseAbs().maxCoeff() == 0)
        {
            if (c.rhs < 0)
            {
                out.closedFeasible = false;
                out.strictFeasible = false;
            }
            else if (c.rhs == 0)
            {
                out.strictFeasible = false;   // 0 < 0 fails strictly
            }
            continue;
        }
        out.inequalities.push_back(std::move(c));
    }
    return out;
}

enum class SliceQuery { Member, Interior };

/// Closed-form membership/interior test on a face with independent active
/// columns: the equality part pins x uniquely, so only sign and bound checks
/// remain.
bool independentSliceTest(const MatrixXr& A, const Face& face, const Rational& lambda,
                          const VectorXr& b, SliceQuery query)
{
    const bool strict = (query == SliceQuery::Interior);
    const VectorXr x = detail::independentCandidate(A, face, lambda, b);
    for (int i : face.partition.plus)
    {
        if (strict ? !(x(i) > 0) : !(x(i) >= 0))
            return false;
    }
    for (int i : face.partition.minus)
    {
        if (strict ? !(x(i) < 0) : !(x(i) <= 0))
            return false;
    }
    const VectorXr residual = b - A * x;
    for (int i : face.partition.zero)
    {
        const Rational g = A.col(i).dot(residual);
        if (strict ? !(abs(g) < lambda) : !(abs(g) <= lambda))
            return false;
    }
    return true;
}

}   // anonymous namespace

namespace detail {

VectorXr independentCandidate(const MatrixXr& A, const Face& face, const Rational& lambda,
                              const VectorXr& b)
{
    const int n = static_cast<int>(A.cols());
    const std::vector<int> active = face.partition.active();
    VectorXr x = VectorXr::Zero(n);
    if (active.empty())
        return x;
    const int k = static_cast<int>(active.size());
    MatrixXr sub(A.rows(), k);
    VectorXr rhs(k);
    for (int r = 0; r < k; ++r)
    {
        const int i = active[static_cast<std::size_t>(r)];
        sub.col(r) = A.col(i);
        const bool isPlus = std::find(face.partition.plus.begin(), face.partition.plus.end(), i)
                            != face.partition.plus.end();
        rhs(r) = A.col(i).dot(b) + (isPlus ? -lambda : lambda);
    }
    const auto sol = solveLinear(MatrixXr(sub.transpose() * sub), rhs);
    for (int r = 0; r < k; ++r)
        x(active[static_cast<std::size_t>(r)]) = sol->particular(r);
    return x;
}

}   // namespace detail

const DecompositionCell& Decomposition::cell(int id) const
{
    if (id < 1 || id > static_cast<int>(cells_.size()))
        throw std::out_of_range("Decomposition::cell: bad id");
    return cells_[static_cast<std::size_t>(id - 1)];
}

Decomposition buildDecomposition(DualPolytope polytope)
{
    Decomposition dec;
    dec.polytope_ = std::move(polytope);
    const MatrixXr& A = dec.polytope_.A();
    for (const Face& face : dec.polytope_.faces())
    {
        DecompositionCell cell;
        cell.id = face.id;
        cell.face = face;
        cell.sCone.system = buildSCone(A, face.partition);
        cell.dGenerators = dGeneratorsOf(A, face);
        cell.lipschitz = faceLipschitz(A, face);
        dec.cells_.push_back(std::move(cell));
    }
    return dec;
}

LinearSystem instantiateSCone(const DecompositionCell& cell, const Rational& lambda,
                              const VectorXr& b)
{
    const int n = static_cast<int>(cell.sCone.system.dim) - 1 - static_cast<int>(b.size());
    InstantiatedCone inst = instantiateRows(cell, lambda, b);
    LinearSystem sys(n);
    if (!inst.closedFeasible)
    {
        sys.addInequality(VectorXr::Zero(n), Rational(-1));
        return sys;
    }
    for (LinearConstraint& c : inst.equalities)
        sys.addEquality(std::move(c.coeff), std::move(c.rhs));
    for (LinearConstraint& c : inst.inequalities)
        sys.addInequality(std::move(c.coeff), std::move(c.rhs));
    return sys;
}

bool memberDF(const Decomposition& dec, int cellId, const Rational& lambda, const VectorXr& b)
{
    if (lambda < 0)
        throw NegativeLambdaException("member_DF: lambda = " + toString(lambda) + " < 0");
    const DecompositionCell& cell = dec.cell(cellId);
    if (b.size() != dec.A().rows())
        throw std::invalid_argument("member_DF: b dimension mismatch");
    if (cell.face.inF0)
        return independentSliceTest(dec.A(), cell.face, lambda, b, SliceQuery::Member);
    const InstantiatedCone inst = instantiateRows(cell, lambda, b);
    if (!inst.closedFeasible)
        return false;
    LinearSystem sys(static_cast<int>(dec.A().cols()));
    for (const LinearConstraint& c : inst.equalities)
        sys.addEquality(c.coeff, c.rhs);
    for (const LinearConstraint& c : inst.inequalities)
        sys.addInequality(c.coeff, c.rhs);
    return isFeasible(sys);
}

bool inInteriorDF(const Decomposition& dec, int cellId, const Rational& lambda,
                  const VectorXr& b)
{
    if (lambda < 0)
        throw NegativeLambdaException("in_interior_DF: lambda = " + toString(lambda) + " < 0");
    if (lambda == 0)
        return false;   // every point of int D_F has lambda > 0
    const DecompositionCell& cell = dec.cell(cellId);
    if (b.size() != dec.A().rows())
        throw std::invalid_argument("in_interior_DF: b dimension mismatch");
    if (cell.face.inF0)
        return independentSliceTest(dec.A(), cell.face, lambda, b, SliceQuery::Interior);
    const InstantiatedCone inst = instantiateRows(cell, lambda, b);
    if (!inst.closedFeasible || !inst.strictFeasible)
        return false;
    return strictInteriorPoint(inst.equalities, inst.inequalities,
                               static_cast<int>(dec.A().cols()))
        .has_value();
}

std::vector<int> locate(const Decomposition& dec, const Rational& lambda, const VectorXr& b)
{
    std::vector<int> ids;
    for (const DecompositionCell& cell : dec.cells())
    {
        if (memberDF(dec, cell.id, lambda, b))
            ids.push_back(cell.id);
    }
    if (ids.empty())
        throw std::logic_error("locate: no cell contains the point; decomposition invariant violated");
    return ids;
}

}   // namespace l1s
