#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

#include <l1s/decomposition.hpp>
#include <l1s/dual_polytope.hpp>
#include <l1s/linalg.hpp>
#include <l1s/oracle.hpp>
#include <l1s/solution_map.hpp>
#include <l1s/validate.hpp>

namespace l1s {

namespace {

Eigen::VectorXd toDoubleVec(const VectorXr& v)
{
    Eigen::VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out(i) = toDouble(v(i));
    return out;
}

Eigen::MatrixXd toDoubleMat(const MatrixXr& M)
{
    Eigen::MatrixXd out(M.rows(), M.cols());
    for (Eigen::Index r = 0; r < M.rows(); ++r)
        for (Eigen::Index c = 0; c < M.cols(); ++c)
            out(r, c) = toDouble(M(r, c));
    return out;
}

Rational l1Norm(const VectorXr& v)
{
    Rational s = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        s += v(i) < 0 ? Rational(-v(i)) : v(i);
    return s;
}

/// Random rational in (0, 5] with a small denominator, so the exact LPs
/// downstream stay cheap.
Rational randomLambda(std::mt19937& rng)
{
    std::uniform_int_distribution<int> denDraw(1, 20);
    const int den = denDraw(rng);
    std::uniform_int_distribution<int> numDraw(1, 5 * den);
    return Rational(numDraw(rng)) / den;
}

/// Random rational vector with entries in [-5, 5], small denominators.
VectorXr randomB(std::mt19937& rng, int m)
{
    VectorXr b(m);
    std::uniform_int_distribution<int> denDraw(1, 8);
    for (int i = 0; i < m; ++i)
    {
        const int den = denDraw(rng);
        std::uniform_int_distribution<int> numDraw(-5 * den, 5 * den);
        b(i) = Rational(numDraw(rng)) / den;
    }
    return b;
}

/**
 * One randomized end-to-end trial, fully determined by its arguments:
 * draw an instance, decompose, solve structurally at a random parameter,
 * then check oracle agreement, KKT residuals of every structural vertex,
 * cell coverage, positive homogeneity, and the certified Lipschitz bound
 * within one cell.  `bpTrial` forces lambda = 0, exercising the basis
 * pursuit LP instead of the proximal gradient oracle.
 */
TrialResult runTrial(unsigned trialSeed, bool bpTrial, int maxM, int maxN)
{
    TrialResult out;
    out.seed = trialSeed;
    std::mt19937 rng(trialSeed);
    auto fail = [&out](const std::string& what) { out.detail = what; };

    try
    {
        std::uniform_int_distribution<int> mDraw(2, maxM);
        std::uniform_int_distribution<int> nDraw(3, maxN);
        out.m = mDraw(rng);
        out.n = nDraw(rng);
        const MatrixXr A = randomInstance(rng, out.m, out.n);
        const Decomposition dec = buildDecomposition(buildDualPolytope(A));

        out.lambda = bpTrial ? Rational(0) : randomLambda(rng);
        out.b = randomB(rng, out.m);

        SolutionSet sol = solve(dec, out.lambda, out.b);
        const std::vector<VectorXr>& verts = solutionVertices(sol);
        if (verts.empty())
        {
            fail("structural solution set has no vertices");
            return out;
        }

        const Eigen::MatrixXd Ad = toDoubleMat(A);
        const Eigen::VectorXd bd = toDoubleVec(out.b);
        const double lambdaD = toDouble(out.lambda);
        std::vector<Eigen::VectorXd> vertsD;
        vertsD.reserve(verts.size());
        for (const VectorXr& v : verts)
            vertsD.push_back(toDoubleVec(v));

        // Oracle agreement: the independent numerical solver must land on the
        // structural solution set (and at lambda = 0, the exact LP value must
        // match the structural l1 norm, rational equality).
        if (out.lambda > 0)
        {
            const OracleResult ora = proxGradLasso(Ad, bd, lambdaD);
            out.oracleDistance = distanceToHull(ora.x, vertsD);
        }
        else
        {
            const VectorXr xbp = bpLp(A, out.b);
            const Rational bpNorm = l1Norm(xbp);
            for (const VectorXr& v : verts)
                if (l1Norm(v) != bpNorm)
                {
                    fail("basis pursuit value differs from a structural vertex norm");
                    return out;
                }
            out.oracleDistance = distanceToHull(toDoubleVec(xbp), vertsD);
        }
        if (!(out.oracleDistance <= 1e-6))
        {
            fail("oracle point is off the structural solution set");
            return out;
        }

        for (const Eigen::VectorXd& v : vertsD)
            out.maxVertexResidual =
                std::max(out.maxVertexResidual, kktResidual(Ad, bd, lambdaD, v));
        if (!(out.maxVertexResidual <= 1e-10))
        {
            fail("a structural vertex violates the float KKT residual bound");
            return out;
        }

        // Coverage: random parameters are located in at least one cell and
        // interior to at most one.
        for (int k = 0; k < 25; ++k)
        {
            std::uniform_int_distribution<int> denDraw(1, 12);
            const int den = denDraw(rng);
            std::uniform_int_distribution<int> numDraw(0, 5 * den);
            const Rational lambdaQ = Rational(numDraw(rng)) / den;
            const VectorXr bQ = randomB(rng, out.m);
            const std::vector<int> ids = locate(dec, lambdaQ, bQ);
            int interior = 0;
            for (int id : ids)
                if (inInteriorDF(dec, id, lambdaQ, bQ))
                    ++interior;
            if (ids.empty() || interior > 1)
            {
                fail("coverage: location empty or interior overlap");
                return out;
            }
        }

        // Positive homogeneity: S(t lambda, t b) = t S(lambda, b), exact and
        // vertex-wise (lexicographic vertex order survives scaling by t > 0).
        {
            std::uniform_int_distribution<int> numDraw(1, 12), denDraw(1, 6);
            const Rational t = Rational(numDraw(rng)) / denDraw(rng);
            SolutionSet scaled = solve(dec, t * out.lambda, VectorXr(t * out.b));
            const std::vector<VectorXr>& scaledVerts = solutionVertices(scaled);
            bool ok = scaledVerts.size() == verts.size();
            for (std::size_t i = 0; ok && i < verts.size(); ++i)
                ok = scaledVerts[i] == t * verts[i];
            if (!ok)
            {
                fail("homogeneity violated");
                return out;
            }
        }

        // Lipschitz: within one cell carrying a certified constant, the
        // Hausdorff distance obeys kappa * |p - q| up to float tolerance.
        {
            std::vector<int> candidates;
            for (const DecompositionCell& c : dec.cells())
                if (c.lipschitz.has_value())
                    candidates.push_back(c.id);
            std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
            const DecompositionCell& cell = dec.cell(candidates[pick(rng)]);
            const ParamPoint p = randomCellParameter(cell, rng, 0.2, 1.2);
            const ParamPoint q = randomCellParameter(cell, rng, 0.2, 1.2);
            if (p.lambda != q.lambda || p.b != q.b)
            {
                SolutionSet solP = solve(dec, p.lambda, p.b);
                SolutionSet solQ = solve(dec, q.lambda, q.b);
                const double dH = hausdorffDistance(solP, solQ);
                const double dLam = toDouble(p.lambda) - toDouble(q.lambda);
                const double dist =
                    std::sqrt(dLam * dLam +
                              (toDoubleVec(p.b) - toDoubleVec(q.b)).squaredNorm());
                if (!(dH <= *cell.lipschitz * dist + 1e-9))
                {
                    fail("certified Lipschitz bound violated within a cell");
                    return out;
                }
            }
        }
    }
    catch (const std::exception& e)
    {
        fail(std::string("exception: ") + e.what());
        return out;
    }

    out.pass = true;
    return out;
}

}   // anonymous namespace

bool ValidationReport::allPass() const
{
    return std::all_of(trials.begin(), trials.end(),
                       [](const TrialResult& t) { return t.pass; });
}

MatrixXr randomInstance(std::mt19937& rng, int m, int n)
{
    if (m <= 0 || n < m)
        throw std::invalid_argument("randomInstance: need 0 < m <= n");
    std::uniform_int_distribution<int> entry(-5, 5);
    MatrixXr A(m, n);
    for (;;)
    {
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < n; ++c)
                A(r, c) = entry(rng);
        if (rankOf(A) == m)
            return A;
    }
}

RelativeInteriorSystem relativeInteriorSystem(const LinearSystem& sys)
{
    if (!isFeasible(sys))
        throw std::invalid_argument("relativeInteriorSystem: empty polyhedron");
    RelativeInteriorSystem out;
    out.dim = sys.dim;
    out.equalities = sys.equalities;
    for (const LinearConstraint& row : sys.inequalities)
    {
        // Implicit iff no point of the polyhedron is strictly below the row:
        // the minimum of coeff . z over the polyhedron equals rhs.
        const LpOutcome low = lpSolve(row.coeff, LpSense::Minimize, sys);
        if (low.status == LpStatus::Optimal && low.optimum == row.rhs)
            out.equalities.push_back(row);
        else
            out.stricts.push_back(row);
    }
    return out;
}

bool relativeInteriorsMeet(const RelativeInteriorSystem& f,
                           const RelativeInteriorSystem& g)
{
    if (f.dim != g.dim)
        throw std::invalid_argument("relativeInteriorsMeet: dimension mismatch");
    std::vector<LinearConstraint> equalities = f.equalities;
    equalities.insert(equalities.end(), g.equalities.begin(), g.equalities.end());
    std::vector<LinearConstraint> stricts = f.stricts;
    stricts.insert(stricts.end(), g.stricts.begin(), g.stricts.end());
    return strictInteriorPoint(equalities, stricts, f.dim).has_value();
}

bool relativeInteriorsMeet(const LinearSystem& f, const LinearSystem& g)
{
    if (!isFeasible(f) || !isFeasible(g))
        return false;
    return relativeInteriorsMeet(relativeInteriorSystem(f), relativeInteriorSystem(g));
}

bool relativeInteriorMeetsClosure(const RelativeInteriorSystem& f,
                                  const LinearSystem& g)
{
    if (f.dim != g.dim)
        throw std::invalid_argument("relativeInteriorMeetsClosure: dimension mismatch");
    // Variables (z, t); maximize t with f's strict rows relaxed by t, g's
    // rows weak, and t <= 1 to keep the LP bounded.  A strict common point
    // exists iff the optimum is positive.
    const int dim = f.dim;
    LinearSystem sys(dim + 1);
    auto lift = [dim](const LinearConstraint& c, const Rational& tCoeff) {
        VectorXr row = VectorXr::Zero(dim + 1);
        row.head(dim) = c.coeff;
        row(dim) = tCoeff;
        return LinearConstraint{row, c.rhs};
    };
    for (const LinearConstraint& c : f.equalities)
        sys.equalities.push_back(lift(c, 0));
    for (const LinearConstraint& c : g.equalities)
        sys.equalities.push_back(lift(c, 0));
    for (const LinearConstraint& c : f.stricts)
        sys.inequalities.push_back(lift(c, 1));
    for (const LinearConstraint& c : g.inequalities)
        sys.inequalities.push_back(lift(c, 0));
    VectorXr cap = VectorXr::Zero(dim + 1);
    cap(dim) = 1;
    sys.addInequality(cap, 1);
    const LpOutcome out = lpSolve(cap, LpSense::Maximize, sys);
    return out.status == LpStatus::Optimal && out.optimum > 0;
}

ValidationReport runValidation(const ValidationOptions& opt)
{
    if (opt.trials <= 0)
        throw std::invalid_argument("runValidation: trials must be positive");
    if (opt.maxM < 2 || opt.maxN < 3)
        throw std::invalid_argument("runValidation: dims must allow m >= 2, n >= 3");

    ValidationReport report;
    report.trials.resize(static_cast<std::size_t>(opt.trials));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;)
        {
            const int i = next.fetch_add(1);
            if (i >= opt.trials)
                return;
            // Each trial is seeded independently, so the report does not
            // depend on the thread count.
            report.trials[static_cast<std::size_t>(i)] =
                runTrial(opt.seed + static_cast<unsigned>(i), i % 5 == 4, opt.maxM,
                         opt.maxN);
        }
    };

    const int threadCount = std::max(1, std::min(opt.threads, opt.trials));
    if (threadCount == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threadCount));
        for (int t = 0; t < threadCount; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    return report;
}

Json validationReportToJson(const ValidationReport& report)
{
    Json results = Json::array();
    for (const TrialResult& t : report.trials)
    {
        results.push_back(Json{{"seed", t.seed},
                               {"dims", Json::array({t.m, t.n})},
                               {"lambda", toString(t.lambda)},
                               {"b", ratVectorToJson(t.b)},
                               {"oracle_distance", t.oracleDistance},
                               {"max_vertex_residual", t.maxVertexResidual},
                               {"pass", t.pass},
                               {"detail", t.detail}});
    }
    return Json{{"trials", static_cast<int>(report.trials.size())},
                {"all_pass", report.allPass()},
                {"results", std::move(results)}};
}

}   // namespace l1s
