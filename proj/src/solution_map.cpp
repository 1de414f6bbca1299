#include "l1s/solution_map.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "l1s/exceptions.hpp"
#include "l1s/linalg.hpp"

namespace l1s {

namespace {

bool vecEq(const VectorXr& u, const VectorXr& v)
{
    if (u.size() != v.size())
        return false;
    for (Eigen::Index i = 0; i < u.size(); ++i)
    {
        if (u(i) != v(i))
            return false;
    }
    return true;
}

std::vector<int> supportOf(const VectorXr& x)
{
    std::vector<int> supp;
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        if (x(i) != 0)
            supp.push_back(static_cast<int>(i));
    }
    return supp;
}

/// Solution set described through one specific containing cell.  Equals the
/// result of solve() for any containing cell, which lets batch samplers skip
/// the full location scan.
SolutionSet cellSolution(const Decomposition& dec, int cellId, const Rational& lambda,
                         const VectorXr& b)
{
    const DecompositionCell& cell = dec.cell(cellId);
    SolutionSet set;
    set.cellId = cellId;
    if (cell.face.inF0)
    {
        set.kind = SolutionKind::Unique;
        set.point = detail::independentCandidate(dec.A(), cell.face, lambda, b);
    }
    else
    {
        set.kind = SolutionKind::Polytope;
        set.hrep = instantiateSCone(cell, lambda, b);
    }
    return set;
}

/// Strict dual certificate for a support/sign pattern: y with A_i^T y =
/// sign(x_i) on the support and |A_j^T y| < 1 elsewhere.
std::optional<VectorXr> certificateDual(const MatrixXr& A, const VectorXr& x)
{
    std::vector<LinearConstraint> eqs;
    std::vector<LinearConstraint> stricts;
    for (Eigen::Index i = 0; i < A.cols(); ++i)
    {
        if (x(i) > 0)
            eqs.push_back({A.col(i), Rational(1)});
        else if (x(i) < 0)
            eqs.push_back({A.col(i), Rational(-1)});
        else
        {
            stricts.push_back({A.col(i), Rational(1)});
            stricts.push_back({VectorXr(-A.col(i)), Rational(1)});
        }
    }
    return strictInteriorPoint(eqs, stricts, static_cast<int>(A.rows()));
}

double paramDistance(const ParamPoint& p, const ParamPoint& q)
{
    const double dl = toDouble(p.lambda) - toDouble(q.lambda);
    double acc = dl * dl;
    for (Eigen::Index j = 0; j < p.b.size(); ++j)
    {
        const double db = toDouble(p.b(j)) - toDouble(q.b(j));
        acc += db * db;
    }
    return std::sqrt(acc);
}

Eigen::VectorXd toDoubleVec(const VectorXr& v)
{
    Eigen::VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out(i) = toDouble(v(i));
    return out;
}

}   // anonymous namespace

/**
 * Frank-Wolfe with away steps on the squared distance over the weight
 * simplex, with exact line search.  The duality gap bounds the
 * squared-distance error, so the returned distance is far tighter than the
 * documented 1e-9.
 */
double distanceToHull(const Eigen::VectorXd& p, const std::vector<Eigen::VectorXd>& verts)
{
    const std::size_t k = verts.size();
    if (k == 1)
        return (verts[0] - p).norm();

    // Warm start at the nearest vertex.
    std::size_t best = 0;
    double bestDist = (verts[0] - p).squaredNorm();
    for (std::size_t i = 1; i < k; ++i)
    {
        const double d = (verts[i] - p).squaredNorm();
        if (d < bestDist)
        {
            bestDist = d;
            best = i;
        }
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    w(static_cast<Eigen::Index>(best)) = 1.0;

    Eigen::VectorXd z = verts[best];
    for (int iter = 0; iter < 20000; ++iter)
    {
        const Eigen::VectorXd g = z - p;
        std::size_t fw = 0, aw = 0;
        double sFw = verts[0].dot(g), sAw = -1e300;
        for (std::size_t i = 0; i < k; ++i)
        {
            const double s = verts[i].dot(g);
            if (s < sFw)
            {
                sFw = s;
                fw = i;
            }
            if (w(static_cast<Eigen::Index>(i)) > 1e-14 && s > sAw)
            {
                sAw = s;
                aw = i;
            }
        }
        const double zg = z.dot(g);
        const double gap = zg - sFw;
        if (gap <= 1e-16 * (1.0 + std::abs(zg)))
            break;

        Eigen::VectorXd d;
        double gammaMax;
        bool awayStep = (zg - sAw) < (sFw - zg);   // steeper descent wins
        if (awayStep)
        {
            d = z - verts[aw];
            const double wa = w(static_cast<Eigen::Index>(aw));
            gammaMax = (wa < 1.0 - 1e-14) ? wa / (1.0 - wa) : 1e12;
        }
        else
        {
            d = verts[fw] - z;
            gammaMax = 1.0;
        }
        const double dd = d.squaredNorm();
        if (dd <= 0.0)
            break;
        const double gamma = std::clamp(-g.dot(d) / dd, 0.0, gammaMax);
        if (gamma <= 0.0)
            break;
        if (awayStep)
        {
            w *= (1.0 + gamma);
            w(static_cast<Eigen::Index>(aw)) -= gamma;
            if (w(static_cast<Eigen::Index>(aw)) < 1e-14)
                w(static_cast<Eigen::Index>(aw)) = 0.0;
        }
        else
        {
            w *= (1.0 - gamma);
            w(static_cast<Eigen::Index>(fw)) += gamma;
        }
        z.setZero();
        for (std::size_t i = 0; i < k; ++i)
        {
            if (w(static_cast<Eigen::Index>(i)) > 0.0)
                z += w(static_cast<Eigen::Index>(i)) * verts[i];
        }
    }
    return (z - p).norm();
}

namespace {

/// Top right singular vector and value of a small dense matrix, by power
/// iteration on M^T M.
std::pair<double, Eigen::VectorXd> topSingular(const Eigen::MatrixXd& M)
{
    const Eigen::Index k = M.cols();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(k);
    for (Eigen::Index i = 0; i < k; ++i)
        v(i) += 1e-3 * static_cast<double>(i);
    v.normalize();
    double norm = 0.0;
    for (int iter = 0; iter < 10000; ++iter)
    {
        Eigen::VectorXd next = M.transpose() * (M * v);
        const double len = next.norm();
        if (len == 0.0)
            return {0.0, v};
        next /= len;
        const double estimate = (M * next).norm();
        const bool settled = std::abs(estimate - norm) <= 1e-13 * std::max(1.0, estimate);
        norm = estimate;
        v = next;
        if (settled)
            break;
    }
    return {norm, v};
}

}   // anonymous namespace

SolutionSet solve(const Decomposition& dec, const Rational& lambda, const VectorXr& b)
{
    const std::vector<int> ids = locate(dec, lambda, b);
    int chosen = ids.front();
    for (int id : ids)
    {
        if (dec.cell(id).face.inF0)
        {
            chosen = id;
            break;
        }
    }
    return cellSolution(dec, chosen, lambda, b);
}

VectorXr uniqueSolve(const Decomposition& dec, int cellId, const Rational& lambda,
                     const VectorXr& b)
{
    const DecompositionCell& cell = dec.cell(cellId);
    if (!cell.face.inF0)
        throw FaceNotInF0Exception("unique_solve: cell " + std::to_string(cellId)
                                   + " has linearly dependent active columns");
    return detail::independentCandidate(dec.A(), cell.face, lambda, b);
}

const std::vector<VectorXr>& solutionVertices(SolutionSet& set)
{
    if (!set.vertices.empty())
        return set.vertices;
    if (set.kind == SolutionKind::Unique)
    {
        set.vertices.push_back(set.point);
        return set.vertices;
    }

    const LinearSystem& sys = set.hrep;
    const int n = sys.dim;
    MatrixXr eqM(static_cast<Eigen::Index>(sys.equalities.size()), n);
    for (std::size_t r = 0; r < sys.equalities.size(); ++r)
        eqM.row(static_cast<Eigen::Index>(r)) = sys.equalities[r].coeff.transpose();
    const int baseRank = sys.equalities.empty() ? 0 : rankOf(eqM);
    const int need = n - baseRank;
    const int q = static_cast<int>(sys.inequalities.size());

    std::vector<VectorXr> found;
    std::vector<int> pick;
    auto tryPick = [&]()
    {
        const Eigen::Index rows =
            static_cast<Eigen::Index>(sys.equalities.size() + pick.size());
        MatrixXr M(rows, n);
        VectorXr rhs(rows);
        Eigen::Index r = 0;
        for (const LinearConstraint& c : sys.equalities)
        {
            M.row(r) = c.coeff.transpose();
            rhs(r) = c.rhs;
            ++r;
        }
        for (int idx : pick)
        {
            M.row(r) = sys.inequalities[static_cast<std::size_t>(idx)].coeff.transpose();
            rhs(r) = sys.inequalities[static_cast<std::size_t>(idx)].rhs;
            ++r;
        }
        const auto sol = solveLinear(M, rhs);
        if (!sol || sol->kernel.cols() != 0)
            return;
        if (sys.contains(sol->particular))
            found.push_back(sol->particular);
    };
    auto recurse = [&](auto&& self, int start, int remaining) -> void
    {
        if (remaining == 0)
        {
            tryPick();
            return;
        }
        for (int i = start; i <= q - remaining; ++i)
        {
            pick.push_back(i);
            self(self, i + 1, remaining - 1);
            pick.pop_back();
        }
    };
    recurse(recurse, 0, need);

    std::sort(found.begin(), found.end(), lexLess);
    found.erase(std::unique(found.begin(), found.end(), vecEq), found.end());
    set.vertices = std::move(found);
    return set.vertices;
}

ConditionReport checkConditions(const Decomposition& dec, const Rational& lambda,
                                const VectorXr& b)
{
    SolutionSet sol = solve(dec, lambda, b);
    const std::vector<VectorXr>& verts = solutionVertices(sol);
    const MatrixXr& A = dec.A();
    const VectorXr residual = b - A * verts.front();

    ConditionReport report;
    report.witnessX = verts.front();
    for (Eigen::Index i = 0; i < A.cols(); ++i)
    {
        if (abs(A.col(i).dot(residual)) == lambda)
            report.activeJ.push_back(static_cast<int>(i));
    }
    report.activeIndependent = columnsIndependent(A, report.activeJ);

    // A solution with independent support columns is an extreme point (all
    // solutions share A x and pairwise-consistent signs), so scanning the
    // vertex list decides the existential conditions exactly.
    for (const VectorXr& v : verts)
    {
        const std::vector<int> supp = supportOf(v);
        if (!columnsIndependent(A, supp))
            continue;
        if (!report.certificate)
        {
            const auto y = certificateDual(A, v);
            if (y)
            {
                report.certificate = true;
                report.witnessX = v;
                report.witnessY = *y;
            }
        }
        if (!report.strictCertificate)
        {
            bool strictOff = true;
            for (Eigen::Index i = 0; i < A.cols(); ++i)
            {
                if (v(i) == 0 && !(abs(A.col(i).dot(residual)) < lambda))
                {
                    strictOff = false;
                    break;
                }
            }
            report.strictCertificate = strictOff;
        }
        if (report.certificate && report.strictCertificate)
            break;
    }
    return report;
}

std::optional<double> lipschitzConstant(const DecompositionCell& cell)
{
    return cell.lipschitz;
}

DualPair dualSolve(const Decomposition& dec, const Rational& lambda, const VectorXr& b)
{
    SolutionSet sol = solve(dec, lambda, b);
    const VectorXr& x = solutionVertices(sol).front();
    DualPair out;
    out.scaled = b - dec.A() * x;
    if (lambda > 0)
        out.dual = VectorXr(out.scaled / lambda);
    return out;
}

double hausdorffDistance(SolutionSet& a, SolutionSet& b)
{
    const std::vector<VectorXr>& va = solutionVertices(a);
    const std::vector<VectorXr>& vb = solutionVertices(b);
    std::vector<Eigen::VectorXd> da, db;
    da.reserve(va.size());
    db.reserve(vb.size());
    for (const VectorXr& v : va)
        da.push_back(toDoubleVec(v));
    for (const VectorXr& v : vb)
        db.push_back(toDoubleVec(v));
    double h = 0.0;
    for (const Eigen::VectorXd& p : da)
        h = std::max(h, distanceToHull(p, db));
    for (const Eigen::VectorXd& p : db)
        h = std::max(h, distanceToHull(p, da));
    return h;
}

ParamPoint randomCellParameter(const DecompositionCell& cell, std::mt19937& rng, double lo,
                               double hi)
{
    std::uniform_real_distribution<double> coeff(lo, hi);
    VectorXr p = VectorXr::Zero(cell.dGenerators.front().size());
    for (const VectorXr& g : cell.dGenerators)
        p += rationalFromDouble(coeff(rng)) * g;
    return {p(0), VectorXr(p.tail(p.size() - 1))};
}

std::optional<ParamPoint> interiorCellParameter(const Decomposition& dec, int cellId,
                                                std::mt19937& rng, int maxTries)
{
    const DecompositionCell& cell = dec.cell(cellId);
    for (int attempt = 0; attempt < maxTries; ++attempt)
    {
        const ParamPoint p = randomCellParameter(cell, rng);
        if (inInteriorDF(dec, cellId, p.lambda, p.b))
            return p;
    }
    return std::nullopt;
}

namespace {

/// Orthonormal(ized in doubles, then rationalized) basis of the span of the
/// cell's generators; probing along it captures variation inside lower-
/// dimensional cells too.
std::vector<VectorXr> generatorSpanBasis(const DecompositionCell& cell)
{
    std::vector<Eigen::VectorXd> basis;
    for (const VectorXr& g : cell.dGenerators)
    {
        Eigen::VectorXd v = toDoubleVec(g);
        for (const Eigen::VectorXd& e : basis)
            v -= e.dot(v) * e;
        if (v.norm() > 1e-9)
            basis.push_back(v.normalized());
    }
    std::vector<VectorXr> out;
    for (const Eigen::VectorXd& e : basis)
    {
        VectorXr r(e.size());
        for (Eigen::Index i = 0; i < e.size(); ++i)
            r(i) = rationalFromDouble(e(i));
        out.push_back(std::move(r));
    }
    return out;
}

/// Nearest-vertex matching from probe to base; empty when the matching is
/// not a clean bijection.
std::vector<int> matchVertices(const std::vector<VectorXr>& base,
                               const std::vector<VectorXr>& probe)
{
    if (base.size() != probe.size())
        return {};
    std::vector<int> match(probe.size(), -1);
    std::vector<bool> used(base.size(), false);
    for (std::size_t i = 0; i < probe.size(); ++i)
    {
        const Eigen::VectorXd p = toDoubleVec(probe[i]);
        int bestIdx = -1;
        double bestDist = 0.0;
        for (std::size_t j = 0; j < base.size(); ++j)
        {
            const double d = (toDoubleVec(base[j]) - p).norm();
            if (bestIdx < 0 || d < bestDist)
            {
                bestIdx = static_cast<int>(j);
                bestDist = d;
            }
        }
        if (used[static_cast<std::size_t>(bestIdx)])
            return {};
        used[static_cast<std::size_t>(bestIdx)] = true;
        match[i] = bestIdx;
    }
    return match;
}

struct ProbeContext
{
    const Decomposition& dec;
    const DecompositionCell& cell;
    ParamPoint base;
    std::vector<VectorXr> baseVerts;
};

/// Vertex displacements of S at base + step * dir, matched against the base
/// vertices; empty optional when the probe leaves the cell or the matching
/// fails.
std::optional<std::vector<VectorXr>> probeDisplacements(const ProbeContext& ctx,
                                                        const VectorXr& dir,
                                                        const Rational& step)
{
    const VectorXr shift = step * dir;
    const Rational lambda = ctx.base.lambda + shift(0);
    if (lambda < 0)
        return std::nullopt;
    const VectorXr b = ctx.base.b + shift.tail(shift.size() - 1);
    if (!memberDF(ctx.dec, ctx.cell.id, lambda, b))
        return std::nullopt;
    SolutionSet probe = cellSolution(ctx.dec, ctx.cell.id, lambda, b);
    const std::vector<VectorXr>& verts = solutionVertices(probe);
    const std::vector<int> match = matchVertices(ctx.baseVerts, verts);
    if (match.empty() && !ctx.baseVerts.empty())
        return std::nullopt;
    std::vector<VectorXr> disp(ctx.baseVerts.size());
    for (std::size_t i = 0; i < verts.size(); ++i)
        disp[static_cast<std::size_t>(match[i])] =
            VectorXr(verts[i] - ctx.baseVerts[static_cast<std::size_t>(match[i])]);
    return disp;
}

/**
 * One directional-derivative probe at a random base point of the cell.  The
 * solution map is piecewise affine on D_F; within one linearity region the
 * exact per-vertex maps are recovered from rational finite differences
 * (certified affine by a half-step consistency check), their top singular
 * direction is followed, and the resulting pair is recorded with its honest
 * Hausdorff ratio.
 */
std::optional<LipschitzSample> directionalProbe(const Decomposition& dec,
                                                const DecompositionCell& cell,
                                                std::mt19937& rng)
{
    ProbeContext ctx{dec, cell, randomCellParameter(cell, rng, 0.4, 1.4), {}};
    SolutionSet baseSol = cellSolution(dec, cell.id, ctx.base.lambda, ctx.base.b);
    ctx.baseVerts = solutionVertices(baseSol);
    if (ctx.baseVerts.empty())
        return std::nullopt;

    double scale = std::max(1.0, paramDistance(ctx.base, {Rational(0),
                                                          VectorXr::Zero(ctx.base.b.size())}));
    const Rational eps = rationalFromDouble(1e-4 * scale);
    const std::vector<VectorXr> span = generatorSpanBasis(cell);

    // Exact columns of the per-vertex affine maps along usable directions.
    std::vector<VectorXr> dirs;
    std::vector<std::vector<VectorXr>> columns;   // [direction][vertex]
    for (const VectorXr& d : span)
    {
        for (int sign = 0; sign < 2; ++sign)
        {
            const VectorXr dir = (sign == 0) ? d : VectorXr(-d);
            const auto full = probeDisplacements(ctx, dir, eps);
            if (!full)
                continue;
            const auto half = probeDisplacements(ctx, dir, Rational(eps / 2));
            if (!half)
                continue;
            bool affine = true;
            for (std::size_t i = 0; i < full->size() && affine; ++i)
                affine = vecEq((*full)[i], VectorXr(2 * (*half)[i]));
            if (!affine)
                continue;
            dirs.push_back(dir);
            std::vector<VectorXr> col;
            for (const VectorXr& v : *full)
                col.push_back(VectorXr(v / eps));
            columns.push_back(std::move(col));
            break;
        }
    }
    if (dirs.empty())
        return std::nullopt;

    // Per-vertex map norms over the probed directions; follow the best one.
    const Eigen::Index nRows = columns.front().front().size();
    double bestNorm = -1.0;
    Eigen::VectorXd bestDir;
    for (std::size_t v = 0; v < ctx.baseVerts.size(); ++v)
    {
        Eigen::MatrixXd M(nRows, static_cast<Eigen::Index>(dirs.size()));
        for (std::size_t j = 0; j < dirs.size(); ++j)
            M.col(static_cast<Eigen::Index>(j)) = toDoubleVec(columns[j][v]);
        const auto [norm, vec] = topSingular(M);
        if (norm > bestNorm)
        {
            bestNorm = norm;
            bestDir = vec;
        }
    }
    if (bestNorm <= 0.0)
        return std::nullopt;

    VectorXr delta = VectorXr::Zero(1 + ctx.base.b.size());
    for (std::size_t j = 0; j < dirs.size(); ++j)
        delta += rationalFromDouble(bestDir(static_cast<Eigen::Index>(j))) * dirs[j];

    // Grow the recorded step while the probe stays in the cell, to keep the
    // recorded pair's Hausdorff ratio sharp against floating-point slack.
    Rational step = eps;
    for (int grow = 0; grow < 12; ++grow)
    {
        const Rational next = step * 4;
        if (toDouble(next) > 0.5 * scale)
            break;
        if (!probeDisplacements(ctx, delta, next))
            break;
        step = next;
    }

    const VectorXr shift = step * delta;
    ParamPoint q{ctx.base.lambda + shift(0), VectorXr(ctx.base.b + shift.tail(shift.size() - 1))};
    SolutionSet qSol = cellSolution(dec, cell.id, q.lambda, q.b);
    SolutionSet pSol = cellSolution(dec, cell.id, ctx.base.lambda, ctx.base.b);
    const double dist = paramDistance(ctx.base, q);
    if (dist <= 0.0)
        return std::nullopt;
    return LipschitzSample{ctx.base, q, hausdorffDistance(pSol, qSol) / dist};
}

}   // anonymous namespace

LipschitzEstimate lipschitzEstimate(const Decomposition& dec, int sampleCount, unsigned seed)
{
    if (sampleCount <= 0)
        throw std::invalid_argument("lipschitz_estimate: sample count must be positive");
    std::mt19937 rng(seed);
    LipschitzEstimate est;
    auto record = [&est](const LipschitzSample& s)
    {
        est.samples.push_back(s);
        est.value = std::max(est.value, s.ratio);
    };

    const std::vector<DecompositionCell>& cells = dec.cells();
    const int nCells = static_cast<int>(cells.size());

    // Directional probes: a few per cell, bounded by the budget.
    for (int pass = 0; pass < 3; ++pass)
    {
        for (const DecompositionCell& cell : cells)
        {
            if (static_cast<int>(est.samples.size()) >= sampleCount)
                break;
            const auto sample = directionalProbe(dec, cell, rng);
            if (sample)
                record(*sample);
        }
    }

    // Plain pairs, alternating within-cell and cross-cell.
    std::uniform_int_distribution<int> cellPick(0, nCells - 1);
    long attempts = 0;
    bool within = true;
    while (static_cast<int>(est.samples.size()) < sampleCount
           && attempts < 20L * sampleCount + 100)
    {
        ++attempts;
        const DecompositionCell& c1 = cells[static_cast<std::size_t>(cellPick(rng))];
        const DecompositionCell& c2 =
            within ? c1 : cells[static_cast<std::size_t>(cellPick(rng))];
        within = !within;
        const ParamPoint p = randomCellParameter(c1, rng, 0.05, 1.5);
        const ParamPoint q = randomCellParameter(c2, rng, 0.05, 1.5);
        if (p.lambda == q.lambda && vecEq(p.b, q.b))
            continue;
        SolutionSet sp = cellSolution(dec, c1.id, p.lambda, p.b);
        SolutionSet sq = cellSolution(dec, c2.id, q.lambda, q.b);
        const double dist = paramDistance(p, q);
        if (dist <= 0.0)
            continue;
        record({p, q, hausdorffDistance(sp, sq) / dist});
    }
    return est;
}

std::vector<PathSegment> tracePath(const Decomposition& dec, const ParamPoint& p0,
                                   const ParamPoint& p1)
{
    if (p0.lambda < 0 || p1.lambda < 0)
        throw NegativeLambdaException("trace_path: endpoint with negative lambda");
    const int m = static_cast<int>(dec.A().rows());
    const int n = static_cast<int>(dec.A().cols());
    if (p0.b.size() != m || p1.b.size() != m)
        throw std::invalid_argument("trace_path: endpoint dimension mismatch");

    auto at = [&](const Rational& theta) -> ParamPoint
    {
        return {p0.lambda + theta * (p1.lambda - p0.lambda),
                VectorXr(p0.b + theta * (p1.b - p0.b))};
    };

    std::vector<PathSegment> segments;
    if (p0.lambda == p1.lambda && vecEq(p0.b, p1.b))
    {
        const std::vector<int> ids = locate(dec, p0.lambda, p0.b);
        PathSegment seg;
        seg.thetaIn = 0;
        seg.thetaOut = 1;
        seg.cellId = ids.front();
        seg.solutionIn = solve(dec, p0.lambda, p0.b);
        seg.solutionOut = seg.solutionIn;
        segments.push_back(std::move(seg));
        return segments;
    }

    const Rational dLambda = p1.lambda - p0.lambda;
    const VectorXr dB = p1.b - p0.b;
    for (const DecompositionCell& cell : dec.cells())
    {
        // Variables (theta, x); each cone row has (lambda, b) replaced by
        // the parametrization of the segment.
        LinearSystem sys(1 + n);
        auto substituted = [&](const LinearConstraint& row) -> LinearConstraint
        {
            VectorXr coeff = VectorXr::Zero(1 + n);
            coeff(0) = row.coeff(0) * dLambda;
            Rational rhs = row.rhs - row.coeff(0) * p0.lambda;
            for (int j = 0; j < m; ++j)
            {
                coeff(0) += row.coeff(1 + j) * dB(j);
                rhs -= row.coeff(1 + j) * p0.b(j);
            }
            coeff.tail(n) = row.coeff.tail(n);
            return {std::move(coeff), std::move(rhs)};
        };
        for (const LinearConstraint& row : cell.sCone.system.equalities)
        {
            LinearConstraint c = substituted(row);
            sys.addEquality(std::move(c.coeff), std::move(c.rhs));
        }
        for (const LinearConstraint& row : cell.sCone.system.inequalities)
        {
            LinearConstraint c = substituted(row);
            sys.addInequality(std::move(c.coeff), std::move(c.rhs));
        }
        VectorXr low = VectorXr::Zero(1 + n);
        low(0) = -1;
        sys.addInequality(low, Rational(0));      // theta >= 0
        VectorXr high = VectorXr::Zero(1 + n);
        high(0) = 1;
        sys.addInequality(high, Rational(1));     // theta <= 1

        VectorXr objective = VectorXr::Zero(1 + n);
        objective(0) = 1;
        const LpOutcome lo = lpSolve(objective, LpSense::Minimize, sys);
        if (lo.status != LpStatus::Optimal)
            continue;
        const LpOutcome hi = lpSolve(objective, LpSense::Maximize, sys);

        PathSegment seg;
        seg.thetaIn = lo.optimum;
        seg.thetaOut = hi.optimum;
        seg.cellId = cell.id;
        const ParamPoint pin = at(seg.thetaIn);
        const ParamPoint pout = at(seg.thetaOut);
        seg.solutionIn = solve(dec, pin.lambda, pin.b);
        seg.solutionOut = solve(dec, pout.lambda, pout.b);
        segments.push_back(std::move(seg));
    }
    std::sort(segments.begin(), segments.end(),
              [](const PathSegment& a, const PathSegment& b)
              {
                  if (a.thetaIn != b.thetaIn)
                      return a.thetaIn < b.thetaIn;
                  return a.cellId < b.cellId;
              });
    return segments;
}

}   // namespace l1s
