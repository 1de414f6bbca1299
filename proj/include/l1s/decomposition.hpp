/**
 * The cone decomposition attached to the dual polytope: one cell per face F,
 * carrying the H-representation of the graph cone
 *
 *     S_F = { (lambda, b, x) : lambda >= 0,
 *             x_i >= 0 and A_i^T (b - A x) =  lambda   on plus(F),
 *             x_i  = 0 and |A_i^T (b - A x)| <= lambda on zero(F),
 *             x_i <= 0 and A_i^T (b - A x) = -lambda   on minus(F) }
 *
 * and the generator list of its parameter shadow D_F (the projection of S_F
 * onto (lambda, b)).  The D_F tile the parameter space {lambda >= 0} with
 * pairwise disjoint interiors, which is what makes exact cell location
 * possible.
 */

#ifndef L1S_DECOMPOSITION_HPP
#define L1S_DECOMPOSITION_HPP

#include <optional>
#include <vector>

#include "dual_polytope.hpp"
#include "rational.hpp"
#include "simplex.hpp"

namespace l1s {

/// H-representation of S_F; variables ordered (lambda, b_1..b_m, x_1..x_n).
struct ConeHRep
{
    LinearSystem system;
};

struct DecompositionCell
{
    int id = 0;                           // equals the face id
    Face face;
    ConeHRep sCone;
    std::vector<VectorXr> dGenerators;    // generators of D_F in R^{1+m}, irredundant
    std::optional<double> lipschitz;      // closed-form constant where defined
};

class Decomposition
{
    public:
        const DualPolytope& polytope() const { return polytope_; }
        const MatrixXr& A() const { return polytope_.A(); }
        const std::vector<DecompositionCell>& cells() const { return cells_; }

        /// 1-based lookup.
        const DecompositionCell& cell(int id) const;

        friend Decomposition buildDecomposition(DualPolytope polytope);

    private:
        DualPolytope polytope_;
        std::vector<DecompositionCell> cells_;
};

/**
 * One cell per face: assemble S_F, project its generator list
 * {(0, A_i) : i in plus} u {(0, -A_j) : j in minus} u {(1, V) : V vertex of F}
 * and drop the superfluous generators (one cone-membership LP each), and
 * attach the closed-form Lipschitz constant where it exists (0 for the whole
 * polytope, the spectral-norm formula for faces with independent active
 * columns, absent otherwise).
 */
Decomposition buildDecomposition(DualPolytope polytope);

/**
 * The solution-set system {x : (lambda, b, x) in S_F} at a fixed parameter
 * point: every S_F row with its (lambda, b) part moved to the right-hand
 * side.  Satisfied constant rows are dropped; an infeasible constant row
 * collapses to the canonical empty system 0 <= -1.
 */
LinearSystem instantiateSCone(const DecompositionCell& cell, const Rational& lambda,
                              const VectorXr& b);

/// Is (lambda, b) in D_F?  Exact.
/// @throws NegativeLambdaException when lambda < 0.
bool memberDF(const Decomposition& dec, int cellId, const Rational& lambda, const VectorXr& b);

/// Is (lambda, b) in the interior of D_F?  Exact.
/// @throws NegativeLambdaException when lambda < 0.
bool inInteriorDF(const Decomposition& dec, int cellId, const Rational& lambda,
                  const VectorXr& b);

/// All cells whose D_F contains (lambda, b), ascending by id; never empty.
/// @throws NegativeLambdaException when lambda < 0.
std::vector<int> locate(const Decomposition& dec, const Rational& lambda, const VectorXr& b);

namespace detail {

/// The unique point satisfying the equality part of the cell's cone at
/// (lambda, b) when the face's active columns are independent: zero off the
/// active set, normal equations A_i^T A x = A_i^T b -/+ lambda on it.
VectorXr independentCandidate(const MatrixXr& A, const Face& face, const Rational& lambda,
                              const VectorXr& b);

}   // namespace detail

}   // namespace l1s

#endif
