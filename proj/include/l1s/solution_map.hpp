/**
 * Exact evaluation of the solution multifunction
 *
 *     S(lambda, b) = argmin_x ||x||_1 + (1/(2 lambda)) ||A x - b||^2
 *
 * (equality-constrained basis pursuit at lambda = 0), together with the
 * structural queries the decomposition makes cheap: uniqueness and
 * certificate conditions, per-cell Lipschitz constants, the scaled dual map
 * b - A x, and exact solution paths along parameter segments.
 */

#ifndef L1S_SOLUTION_MAP_HPP
#define L1S_SOLUTION_MAP_HPP

#include <optional>
#include <random>
#include <vector>

#include "decomposition.hpp"
#include "rational.hpp"
#include "simplex.hpp"

namespace l1s {

enum class SolutionKind { Unique, Polytope };

/**
 * The solution set at one parameter point.  Unique solutions carry the point
 * directly; polytopal ones carry the H-representation in x obtained by
 * fixing (lambda, b) in the covering cone, with extreme points filled in on
 * demand by solutionVertices().
 */
struct SolutionSet
{
    SolutionKind kind = SolutionKind::Unique;
    VectorXr point;                    // kind == Unique
    LinearSystem hrep;                 // kind == Polytope; variables are x
    std::vector<VectorXr> vertices;    // empty until solutionVertices() runs
    int cellId = 0;                    // cell whose description was used
};

/**
 * Evaluate S(lambda, b).  The covering cell is the first located cell with
 * independent active columns if one exists (the solution is then a single
 * point), otherwise the first located cell; the described set is the same
 * either way.
 *
 * @throws NegativeLambdaException when lambda < 0.
 */
SolutionSet solve(const Decomposition& dec, const Rational& lambda, const VectorXr& b);

/**
 * Closed-form solution on a cell with independent active columns: x is zero
 * off the active set and solves the active normal equations
 * A_i^T A x = A_i^T b -/+ lambda.  The caller guarantees (lambda, b) lies in
 * the cell; the returned affine map extends outside it.
 *
 * @throws FaceNotInF0Exception when the cell's active columns are dependent.
 */
VectorXr uniqueSolve(const Decomposition& dec, int cellId, const Rational& lambda,
                     const VectorXr& b);

/// All extreme points of the set, exact, in lexicographic order; cached on
/// the set.  The polytope is bounded (the 1-norm is constant over it).
const std::vector<VectorXr>& solutionVertices(SolutionSet& set);

/**
 * The three nested certificate conditions at (lambda, b), strongest last:
 *
 *   - certificate: some solution has linearly independent support columns
 *     and admits a dual vector y with A_i^T y = sign(x_i) on the support and
 *     |A_j^T y| < 1 off it.
 *   - activeIndependent: the columns of the active set
 *     J = { i : |A_i^T (b - A x)| = lambda } are linearly independent.
 *   - strictCertificate: some solution has independent support columns and
 *     |A_i^T (b - A x)| < lambda for every i outside its support.
 *
 * strictCertificate implies activeIndependent implies certificate.  A
 * solution with independent support is automatically an extreme point
 * (solutions share A x and pairwise-consistent signs), so scanning the
 * vertex list loses no generality.
 */
struct ConditionReport
{
    bool certificate = false;
    bool activeIndependent = false;
    bool strictCertificate = false;
    VectorXr witnessX;                  // solution backing the report
    std::optional<VectorXr> witnessY;   // dual vector found for certificate
    std::vector<int> activeJ;           // the set J, ascending, zero-based
};

/// @throws NegativeLambdaException when lambda < 0.
ConditionReport checkConditions(const Decomposition& dec, const Rational& lambda,
                                const VectorXr& b);

/// The cell's closed-form Lipschitz constant: 0 on the whole-polytope cell,
/// the spectral-norm formula on cells with independent active columns,
/// absent elsewhere.
std::optional<double> lipschitzConstant(const DecompositionCell& cell);

struct ParamPoint
{
    Rational lambda;
    VectorXr b;
};

struct LipschitzSample
{
    ParamPoint p;
    ParamPoint q;
    double ratio = 0.0;   // Hausdorff(S(p), S(q)) / ||p - q||
};

struct LipschitzEstimate
{
    double value = 0.0;                    // max ratio over all samples
    std::vector<LipschitzSample> samples;  // in generation order
};

/**
 * Empirical lower bound on the global Lipschitz constant of S: the largest
 * Hausdorff-to-parameter-distance ratio over deterministic (seeded) sample
 * pairs.  Pairs are drawn within single cells (including short directional
 * probes around base points, which approach each cell's true constant) and
 * across cells.
 */
LipschitzEstimate lipschitzEstimate(const Decomposition& dec, int sampleCount,
                                    unsigned seed);

/// Hausdorff distance between two solution sets, computed from their vertex
/// lists (filled in if absent).  Point-to-polytope distances are found by
/// iterative projection onto the convex hull to tolerance 1e-9.
double hausdorffDistance(SolutionSet& a, SolutionSet& b);

/// Euclidean distance from a point to the convex hull of a vertex list, by
/// iterative projection (exact line-search Frank-Wolfe with away steps);
/// accurate well past the documented 1e-9.
double distanceToHull(const Eigen::VectorXd& point,
                      const std::vector<Eigen::VectorXd>& vertices);

/// Random member of D_F: a conic combination of the cell's generators with
/// coefficients drawn uniformly from [lo, hi).
ParamPoint randomCellParameter(const DecompositionCell& cell, std::mt19937& rng,
                               double lo = 0.3, double hi = 1.3);

/// Random interior point of D_F, by rejection; empty when the cell has no
/// interior (it is then covered by neighboring cells).
std::optional<ParamPoint> interiorCellParameter(const Decomposition& dec, int cellId,
                                                std::mt19937& rng, int maxTries = 200);

/// The dual side of the parametrization b = A x + lambda y.
struct DualPair
{
    VectorXr scaled;                 // b - A x, identical for every solution x
    std::optional<VectorXr> dual;    // scaled / lambda; absent at lambda = 0
};

/// @throws NegativeLambdaException when lambda < 0.
DualPair dualSolve(const Decomposition& dec, const Rational& lambda, const VectorXr& b);

/**
 * One maximal parameter interval of a traced segment inside a single cell,
 * with the exact solution sets at both interval ends.
 */
struct PathSegment
{
    Rational thetaIn;
    Rational thetaOut;
    int cellId = 0;
    SolutionSet solutionIn;
    SolutionSet solutionOut;
};

/**
 * Exact cell itinerary of theta -> (1-theta) p0 + theta p1 on [0, 1]: per
 * cell, two LPs give the min and max theta whose parameter point the cell
 * contains; nonempty intervals are reported sorted by start.  Intervals are
 * closed and overlap at breakpoints, and their union covers [0, 1].
 *
 * @throws NegativeLambdaException when either endpoint has lambda < 0.
 */
std::vector<PathSegment> tracePath(const Decomposition& dec, const ParamPoint& p0,
                                   const ParamPoint& p1);

}   // namespace l1s

#endif
