/**
 * Randomized end-to-end validation: random full-row-rank instances are
 * decomposed, solved structurally and cross-checked against the numerical
 * oracles (solution agreement, KKT residuals, cell coverage, homogeneity,
 * and the certified Lipschitz bound).  Every trial is reproducible from its
 * own seed, so runs parallelize without changing the report.
 */

#ifndef L1S_VALIDATE_HPP
#define L1S_VALIDATE_HPP

#include <random>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "json_io.hpp"
#include "rational.hpp"
#include "simplex.hpp"

namespace l1s {

struct ValidationOptions
{
    unsigned seed = 42;
    int trials = 200;
    int maxM = 3;        // row counts are drawn from {2, ..., maxM}
    int maxN = 6;        // column counts are drawn from {3, ..., maxN}
    int threads = 1;
};

struct TrialResult
{
    unsigned seed = 0;           // per-trial seed, fully determines the trial
    int m = 0;
    int n = 0;
    Rational lambda = 0;
    VectorXr b;
    double oracleDistance = 0.0;       // oracle point to structural solution set
    double maxVertexResidual = 0.0;    // worst float KKT residual over vertices
    bool pass = false;
    std::string detail;                // empty on success, else what failed first
};

struct ValidationReport
{
    std::vector<TrialResult> trials;

    bool allPass() const;
};

/// Random integer matrix with entries in [-5, 5], redrawn until it has full
/// row rank.
MatrixXr randomInstance(std::mt19937& rng, int m, int n);

/**
 * H-description of the relative interior of a feasible polyhedron: the
 * original equalities plus the implicit inequalities (those satisfied with
 * equality everywhere on the polyhedron), and the remaining inequalities,
 * which hold strictly exactly on the relative interior.
 */
struct RelativeInteriorSystem
{
    int dim = 0;
    std::vector<LinearConstraint> equalities;
    std::vector<LinearConstraint> stricts;
};

/// Splits a feasible system into implicit equalities and properly strict
/// rows; one LP per inequality.  Throws std::invalid_argument when the
/// system is infeasible (its polyhedron has no relative interior to speak
/// of).
RelativeInteriorSystem relativeInteriorSystem(const LinearSystem& sys);

/// Do the relative interiors of two polyhedra (same ambient dimension)
/// intersect?  Exact; the split overload lets callers amortize the implicit
/// row detection over many pairs.
bool relativeInteriorsMeet(const RelativeInteriorSystem& f,
                           const RelativeInteriorSystem& g);
bool relativeInteriorsMeet(const LinearSystem& f, const LinearSystem& g);

/// Is ri(f) ∩ g nonempty, with g taken closed?  One LP: maximize a slack
/// shared by f's strict rows subject to g's rows held weakly.
bool relativeInteriorMeetsClosure(const RelativeInteriorSystem& f,
                                  const LinearSystem& g);

ValidationReport runValidation(const ValidationOptions& opt);

Json validationReportToJson(const ValidationReport& report);

}   // namespace l1s

#endif
