/**
 * Exact linear programming over rationals: feasibility, optimization, and
 * strict-interior points.  This is the engine behind face enumeration, cone
 * membership, and path breakpoints; everything is decided by the simplex
 * method with Bland's rule after standard-form conversion, so results are
 * exact and termination is guaranteed.
 */

#ifndef L1S_SIMPLEX_HPP
#define L1S_SIMPLEX_HPP

#include <optional>
#include <vector>

#include "rational.hpp"

namespace l1s {

/// One constraint coeff . z (= or <=) rhs; the relation is decided by which
/// list of a LinearSystem the constraint sits in.
struct LinearConstraint
{
    VectorXr coeff;
    Rational rhs;
};

/// Conjunction of equalities and <= inequalities over a fixed variable count.
struct LinearSystem
{
    int dim = 0;
    std::vector<LinearConstraint> equalities;
    std::vector<LinearConstraint> inequalities;

    LinearSystem() = default;
    explicit LinearSystem(int dimension) : dim(dimension) {}

    void addEquality(VectorXr coeff, Rational rhs);
    void addInequality(VectorXr coeff, Rational rhs);

    /// Exact membership test.
    bool contains(const VectorXr& z) const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class LpSense { Minimize, Maximize };

struct LpOutcome
{
    LpStatus status = LpStatus::Infeasible;
    Rational optimum;   // valid when status == Optimal
    VectorXr point;     // ditto; a vertex of the standard-form feasible region
};

/// Optimize objective . z over the system.  Exact; the returned point is a
/// basic feasible solution of the standard-form conversion.
LpOutcome lpSolve(const VectorXr& objective, LpSense sense, const LinearSystem& sys);

/// Phase-1 feasibility; returns a feasible point when one exists.
std::optional<VectorXr> feasiblePoint(const LinearSystem& sys);

bool isFeasible(const LinearSystem& sys);

/**
 * A point satisfying every equality and every strict inequality
 * coeff . z < rhs.  One shared slack t is maximized subject to
 * coeff . z <= rhs - t (and t <= 1 to keep the LP bounded); a point exists
 * iff the optimal t is positive, which also covers the degenerate case of an
 * empty strict set with feasible equalities.
 */
std::optional<VectorXr> strictInteriorPoint(
    const std::vector<LinearConstraint>& equalities,
    const std::vector<LinearConstraint>& strictInequalities, int dim);

}   // namespace l1s

#endif
