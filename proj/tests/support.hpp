/**
 * Shared test fixtures: the running 2 x 3 example with its hand-checked
 * decomposition table, brute-force reference oracles (face enumeration by
 * exhaustive sign patterns, LP optimum by basic-solution enumeration), and
 * small parsing shorthands.
 */

#ifndef L1S_TESTS_SUPPORT_HPP
#define L1S_TESTS_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <l1s/decomposition.hpp>
#include <l1s/dual_polytope.hpp>
#include <l1s/linalg.hpp>
#include <l1s/rational.hpp>
#include <l1s/simplex.hpp>

namespace support {

using namespace l1s;

inline Rational rat(const std::string& s) { return parseRational(s); }
inline VectorXr rvec(const std::string& s) { return parseRationalVector(s); }

inline MatrixXr rmat(const std::vector<std::string>& rows)
{
    const VectorXr first = rvec(rows.front());
    MatrixXr A(rows.size(), first.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        A.row(r) = rvec(rows[r]).transpose();
    return A;
}

/// The running example: a 2 x 3 full-row-rank matrix whose decomposition
/// (9 cells, 4 dual vertices) is known in closed form and tabulated below.
inline MatrixXr exampleMatrix() { return rmat({"1,0,2", "0,2,-2"}); }

/// One row of the hand-checked decomposition table of the running example.
/// Partitions and vertex/direction labels are 1-based like the summary
/// output; `formula` is the closed-form unique solution on the cell, empty
/// for the two multi-valued cells.
struct TableRow
{
    std::vector<int> plus, zero, minus;
    std::vector<std::string> ext;       // extreme points of the face
    std::vector<std::string> extDir;    // extreme directions of the cell
    std::function<VectorXr(const Rational&, const VectorXr&)> formula;
};

inline const std::vector<TableRow>& exampleTable()
{
    static const std::vector<TableRow> table = {
        {{0, 1, 2}, {}, {}, {"1,1/2"}, {"0,0,2", "0,2,-2", "1,1,1/2"}, nullptr},
        {{}, {}, {0, 1, 2}, {"-1,-1/2"}, {"0,0,-2", "0,-2,2", "1,-1,-1/2"}, nullptr},
        {{1}, {0, 2}, {}, {"1,1/2", "0,1/2"}, {"0,0,2", "1,1,1/2", "1,0,1/2"},
         [](const Rational& l, const VectorXr& b) {
             return rvec("0," + toString(b(1) / 2 - l / 4) + ",0");
         }},
        {{}, {0, 2}, {1}, {"-1,-1/2", "0,-1/2"}, {"0,0,-2", "1,0,-1/2", "1,-1,-1/2"},
         [](const Rational& l, const VectorXr& b) {
             return rvec("0," + toString(b(1) / 2 + l / 4) + ",0");
         }},
        {{2}, {0, 1}, {}, {"1,1/2", "0,-1/2"}, {"0,2,-2", "1,1,1/2", "1,0,-1/2"},
         [](const Rational& l, const VectorXr& b) {
             return rvec("0,0," + toString(b(0) / 4 - b(1) / 4 - l / 8));
         }},
        {{}, {0, 1}, {2}, {"-1,-1/2", "0,1/2"}, {"0,-2,2", "1,-1,-1/2", "1,0,1/2"},
         [](const Rational& l, const VectorXr& b) {
             return rvec("0,0," + toString(b(0) / 4 - b(1) / 4 + l / 8));
         }},
        {{1}, {0}, {2}, {"0,1/2"}, {"0,0,2", "0,-2,2", "1,0,1/2"},
         [](const Rational& l, const VectorXr& b) {
             return rvec("0," + toString(b(0) / 2 + b(1) / 2 - l / 4) + "," +
                         toString(b(0) / 2));
         }},
        {{2}, {0}, {1}, {"0,-1/2"}, {"0,2,-2", "0,0,-2", "1,0,-1/2"},
         [](const Rational& l, const VectorXr& b) {
             return rvec("0," + toString(b(0) / 2 + b(1) / 2 + l / 4) + "," +
                         toString(b(0) / 2));
         }},
        {{}, {0, 1, 2}, {}, {"1,1/2", "0,-1/2", "-1,-1/2", "0,1/2"},
         {"1,1,1/2", "1,0,-1/2", "1,-1,-1/2", "1,0,1/2"},
         [](const Rational&, const VectorXr&) { return rvec("0,0,0"); }},
    };
    return table;
}

/// Looks a cell up by its sign partition (the face identity; canonical ids
/// depend only on the ordering rule, the partition does not).
inline const DecompositionCell& cellByPartition(const Decomposition& dec,
                                                const std::vector<int>& plus,
                                                const std::vector<int>& zero,
                                                const std::vector<int>& minus)
{
    for (const DecompositionCell& cell : dec.cells())
        if (cell.face.partition.plus == plus && cell.face.partition.zero == zero &&
            cell.face.partition.minus == minus)
            return cell;
    throw std::logic_error("cellByPartition: no such partition");
}

inline const DecompositionCell& cellOfRow(const Decomposition& dec, const TableRow& row)
{
    return cellByPartition(dec, row.plus, row.zero, row.minus);
}

/**
 * Brute-force reference for face enumeration: every signature in
 * {+1,0,-1}^n is realized by a nonempty face of {y : ||A^T y||_inf <= 1}
 * iff the system  A_i^T y = s_i (s_i != 0),  -1 < A_j^T y < 1 (s_j = 0)
 * has a solution.  Exponential and independent of the production lattice
 * construction.
 */
inline std::set<std::vector<int>> bruteForcePartitions(const MatrixXr& A)
{
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    std::set<std::vector<int>> out;
    std::vector<int> sig(n, -1);
    for (;;)
    {
        std::vector<LinearConstraint> eqs;
        std::vector<LinearConstraint> stricts;
        for (int i = 0; i < n; ++i)
        {
            const VectorXr col = A.col(i);
            if (sig[i] != 0)
                eqs.push_back({col, Rational(sig[i])});
            else
            {
                stricts.push_back({col, Rational(1)});
                stricts.push_back({VectorXr(-col), Rational(1)});
            }
        }
        if (strictInteriorPoint(eqs, stricts, m).has_value())
            out.insert(sig);
        int i = 0;
        while (i < n && sig[i] == 1)
            sig[i++] = -1;
        if (i == n)
            break;
        ++sig[i];
    }
    return out;
}

/**
 * Brute-force LP reference: enumerates every basic solution (each subset of
 * inequalities turned into equalities whose combined system pins a unique
 * point), keeps the feasible ones, and optimizes by inspection.  Returns
 * nothing when no feasible basic solution exists; unbounded problems are
 * out of scope for the comparisons this backs.
 */
inline std::optional<Rational> bruteForceLpValue(const VectorXr& objective,
                                                 LpSense sense, const LinearSystem& sys)
{
    const int dim = sys.dim;
    const int rows = static_cast<int>(sys.inequalities.size());
    std::optional<Rational> best;
    std::vector<int> choose;
    std::function<void(int)> recurse = [&](int start) {
        MatrixXr M(sys.equalities.size() + choose.size(), dim);
        VectorXr rhs(M.rows());
        Eigen::Index r = 0;
        for (const LinearConstraint& c : sys.equalities)
        {
            M.row(r) = c.coeff.transpose();
            rhs(r++) = c.rhs;
        }
        for (int k : choose)
        {
            M.row(r) = sys.inequalities[k].coeff.transpose();
            rhs(r++) = sys.inequalities[k].rhs;
        }
        if (M.rows() >= dim)
        {
            const std::optional<AffineSolution<Rational>> sol = solveLinear(M, rhs);
            if (sol && sol->kernel.cols() == 0 && sys.contains(sol->particular))
            {
                const Rational value = objective.dot(sol->particular);
                if (!best || (sense == LpSense::Minimize ? value < *best : value > *best))
                    best = value;
            }
        }
        if (static_cast<int>(choose.size()) >= dim)
            return;
        for (int k = start; k < rows; ++k)
        {
            choose.push_back(k);
            recurse(k + 1);
            choose.pop_back();
        }
    };
    recurse(0);
    return best;
}

}   // namespace support

#endif
