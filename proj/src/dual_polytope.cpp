#include "l1s/dual_polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>

#include "l1s/exceptions.hpp"
#include "l1s/linalg.hpp"

namespace l1s {

SignPartition SignPartition::fromSignature(const std::vector<int>& sig)
{
    SignPartition p;
    for (int i = 0; i < static_cast<int>(sig.size()); ++i)
    {
        if (sig[static_cast<std::size_t>(i)] > 0)
            p.plus.push_back(i);
        else if (sig[static_cast<std::size_t>(i)] < 0)
            p.minus.push_back(i);
        else
            p.zero.push_back(i);
    }
    return p;
}

std::vector<int> SignPartition::signature(int n) const
{
    std::vector<int> sig(static_cast<std::size_t>(n), 0);
    for (int i : plus)
        sig[static_cast<std::size_t>(i)] = 1;
    for (int i : minus)
        sig[static_cast<std::size_t>(i)] = -1;
    return sig;
}

std::vector<int> SignPartition::active() const
{
    std::vector<int> out = plus;
    out.insert(out.end(), minus.begin(), minus.end());
    std::sort(out.begin(), out.end());
    return out;
}

SignPartition SignPartition::negated() const
{
    SignPartition p;
    p.plus = minus;
    p.zero = zero;
    p.minus = plus;
    return p;
}

const Face& DualPolytope::face(int id) const
{
    if (id < 1 || id > static_cast<int>(faces_.size()))
        throw std::out_of_range("DualPolytope::face: bad id");
    return faces_[static_cast<std::size_t>(id - 1)];
}

LinearSystem DualPolytope::hrep() const
{
    LinearSystem sys(m());
    for (int i = 0; i < n(); ++i)
    {
        VectorXr column = A_.col(i);
        sys.addInequality(column, Rational(1));
        sys.addInequality(VectorXr(-column), Rational(1));
    }
    return sys;
}

SignPartition partitionOfPoint(const MatrixXr& A, const VectorXr& y)
{
    if (y.size() != A.rows())
        throw std::invalid_argument("partitionOfPoint: dimension mismatch");
    const int n = static_cast<int>(A.cols());
    std::vector<int> sig(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
    {
        const Rational g = A.col(i).dot(y);
        if (g > 1 || g < -1)
            throw PointOutsidePolytopeException("point outside Y0: |A_" + std::to_string(i + 1)
                                                + "^T y| = " + toString(abs(g)) + " > 1");
        if (g == 1)
            sig[static_cast<std::size_t>(i)] = 1;
        else if (g == -1)
            sig[static_cast<std::size_t>(i)] = -1;
    }
    return SignPartition::fromSignature(sig);
}

namespace {

using ActiveMask = std::pair<std::uint64_t, std::uint64_t>;   // (plus bits, minus bits)

ActiveMask maskOf(const SignPartition& p)
{
    ActiveMask mask{0, 0};
    for (int i : p.plus)
        mask.first |= (std::uint64_t{1} << i);
    for (int i : p.minus)
        mask.second |= (std::uint64_t{1} << i);
    return mask;
}

SignPartition partitionOf(const ActiveMask& mask, int n)
{
    std::vector<int> sig(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
    {
        if (mask.first & (std::uint64_t{1} << i))
            sig[static_cast<std::size_t>(i)] = 1;
        else if (mask.second & (std::uint64_t{1} << i))
            sig[static_cast<std::size_t>(i)] = -1;
    }
    return SignPartition::fromSignature(sig);
}

/// Canonical face order: more active constraints first, then signature
/// lexicographic with + before 0 before -.
bool canonicalFaceLess(const Face& a, const Face& b, int n)
{
    const std::size_t activeA = a.partition.plus.size() + a.partition.minus.size();
    const std::size_t activeB = b.partition.plus.size() + b.partition.minus.size();
    if (activeA != activeB)
        return activeA > activeB;
    const std::vector<int> sigA = a.partition.signature(n);
    const std::vector<int> sigB = b.partition.signature(n);
    auto key = [](int s) { return (s > 0) ? 0 : ((s == 0) ? 1 : 2); };
    for (int i = 0; i < n; ++i)
    {
        if (sigA[static_cast<std::size_t>(i)] != sigB[static_cast<std::size_t>(i)])
            return key(sigA[static_cast<std::size_t>(i)]) < key(sigB[static_cast<std::size_t>(i)]);
    }
    return false;
}

int affineDimension(const std::vector<VectorXr>& points)
{
    if (points.size() <= 1)
        return 0;
    MatrixXr diffs(points.front().size(), static_cast<Eigen::Index>(points.size()) - 1);
    for (std::size_t k = 1; k < points.size(); ++k)
        diffs.col(static_cast<Eigen::Index>(k - 1)) = points[k] - points.front();
    return static_cast<int>(rankOf(diffs));
}

}   // anonymous namespace

DualPolytope buildDualPolytope(const MatrixXr& A)
{
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (m < 1 || n < 1)
        throw std::invalid_argument("buildDualPolytope: empty matrix");
    if (n > 63)
        throw std::invalid_argument("buildDualPolytope: more than 63 columns unsupported");
    const Eigen::Index rank = rankOf(A);
    if (rank < m)
        throw RankDeficientException("A must have full row rank (standing assumption): rank = "
                                     + std::to_string(rank) + " < m = " + std::to_string(m));

    DualPolytope P;
    P.A_ = A;

    // Boundedness of Y0.  Full row rank already implies it; this is the
    // fail-fast guard against silently looping on a bad input.
    {
        LinearSystem y0 = P.hrep();
        for (int k = 0; k < m; ++k)
        {
            VectorXr e = VectorXr::Zero(m);
            e(k) = 1;
            if (lpSolve(e, LpSense::Maximize, y0).status != LpStatus::Optimal
                || lpSolve(e, LpSense::Minimize, y0).status != LpStatus::Optimal)
                throw std::logic_error("buildDualPolytope: Y0 unbounded despite full row rank");
        }
    }

    // Vertices: every vertex pins m linearly independent columns at +-1.
    // Exhaust sign-assigned m-subsets of columns.
    std::vector<VectorXr> candidates;
    std::vector<int> subset(static_cast<std::size_t>(m));
    const MatrixXr At = A.transpose();
    auto trySubset = [&]()
    {
        MatrixXr B(m, m);
        for (int r = 0; r < m; ++r)
            B.row(r) = At.row(subset[static_cast<std::size_t>(r)]);
        if (rankOf(B) < m)
            return;
        for (int bits = 0; bits < (1 << m); ++bits)
        {
            VectorXr s(m);
            for (int r = 0; r < m; ++r)
                s(r) = (bits & (1 << r)) ? Rational(-1) : Rational(1);
            const auto sol = solveLinear(B, s);
            const VectorXr& y = sol->particular;
            if ((At * y).cwiseAbs().maxCoeff() <= 1)
                candidates.push_back(y);
        }
    };
    auto recurse = [&](auto&& self, int pos, int next) -> void
    {
        if (pos == m)
        {
            trySubset();
            return;
        }
        for (int c = next; c <= n - (m - pos); ++c)
        {
            subset[static_cast<std::size_t>(pos)] = c;
            self(self, pos + 1, c + 1);
        }
    };
    recurse(recurse, 0, 0);
    std::sort(candidates.begin(), candidates.end(), lexLess);
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const VectorXr& a, const VectorXr& b) { return a == b; }),
                     candidates.end());
    P.vertices_ = std::move(candidates);
    if (P.vertices_.empty())
        throw std::logic_error("buildDualPolytope: bounded polytope without vertices");

    // Face lattice.  The partition of a face is the componentwise meet of its
    // vertices' partitions, so closing the vertex activity masks under
    // pairwise intersection enumerates every nonempty face (plus Y0 itself,
    // whose mask is empty).
    std::vector<ActiveMask> vertexMasks;
    vertexMasks.reserve(P.vertices_.size());
    for (const VectorXr& v : P.vertices_)
        vertexMasks.push_back(maskOf(partitionOfPoint(A, v)));

    std::set<ActiveMask> closure(vertexMasks.begin(), vertexMasks.end());
    closure.insert(ActiveMask{0, 0});   // Y0: meet of all vertices (0 is interior)
    bool grew = true;
    while (grew)
    {
        grew = false;
        std::vector<ActiveMask> snapshot(closure.begin(), closure.end());
        for (std::size_t a = 0; a < snapshot.size(); ++a)
        {
            for (std::size_t b = a + 1; b < snapshot.size(); ++b)
            {
                const ActiveMask meet{snapshot[a].first & snapshot[b].first,
                                      snapshot[a].second & snapshot[b].second};
                if (closure.insert(meet).second)
                    grew = true;
            }
        }
    }

    for (const ActiveMask& mask : closure)
    {
        Face face;
        face.partition = partitionOf(mask, n);
        for (std::size_t k = 0; k < P.vertices_.size(); ++k)
        {
            if ((vertexMasks[k].first & mask.first) == mask.first
                && (vertexMasks[k].second & mask.second) == mask.second)
                face.vertices.push_back(P.vertices_[k]);
        }
        face.dim = affineDimension(face.vertices);
        face.inF0 = columnsIndependent(A, face.partition.active());

        // Confirmation LP doubles as the relative-interior point.
        std::vector<LinearConstraint> eqs;
        std::vector<LinearConstraint> stricts;
        for (int i : face.partition.plus)
            eqs.push_back({A.col(i), Rational(1)});
        for (int i : face.partition.minus)
            eqs.push_back({A.col(i), Rational(-1)});
        for (int i : face.partition.zero)
        {
            stricts.push_back({A.col(i), Rational(1)});
            stricts.push_back({VectorXr(-A.col(i)), Rational(1)});
        }
        auto ri = strictInteriorPoint(eqs, stricts, m);
        if (!ri)
            throw std::logic_error("buildDualPolytope: face candidate with empty relative interior");
        face.riPoint = *ri;
        P.faces_.push_back(std::move(face));
    }

    std::sort(P.faces_.begin(), P.faces_.end(),
              [n](const Face& a, const Face& b) { return canonicalFaceLess(a, b, n); });
    for (std::size_t k = 0; k < P.faces_.size(); ++k)
        P.faces_[k].id = static_cast<int>(k) + 1;
    return P;
}

}   // namespace l1s
