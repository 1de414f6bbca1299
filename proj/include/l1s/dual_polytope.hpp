/**
 * The dual polytope Y0 = {y : ||A^T y||_inf <= 1} of an l1 regularization
 * problem, together with the complete list of its nonempty faces.  Each face
 * is identified by its sign partition: the columns where A_i^T y is pinned
 * at +1 across the face, pinned at -1, or strictly between.
 */

#ifndef L1S_DUAL_POLYTOPE_HPP
#define L1S_DUAL_POLYTOPE_HPP

#include <vector>

#include "rational.hpp"
#include "simplex.hpp"

namespace l1s {

/// Disjoint triple of column indices covering {0..n-1} (zero-based).
struct SignPartition
{
    std::vector<int> plus;
    std::vector<int> zero;
    std::vector<int> minus;

    static SignPartition fromSignature(const std::vector<int>& sig);

    /// Per-column +1 / 0 / -1 labels.
    std::vector<int> signature(int n) const;

    /// plus and minus merged, ascending.
    std::vector<int> active() const;

    /// The partition of the antipodal face (-F).
    SignPartition negated() const;

    bool operator==(const SignPartition& other) const = default;
};

struct Face
{
    int id = 0;                        // 1-based canonical id
    SignPartition partition;
    std::vector<VectorXr> vertices;    // extreme points, lexicographic order
    int dim = 0;
    VectorXr riPoint;                  // a relative-interior point
    bool inF0 = false;                 // active columns linearly independent
};

class DualPolytope
{
    public:
        const MatrixXr& A() const { return A_; }
        int m() const { return static_cast<int>(A_.rows()); }
        int n() const { return static_cast<int>(A_.cols()); }
        const std::vector<VectorXr>& vertexList() const { return vertices_; }
        const std::vector<Face>& faces() const { return faces_; }

        /// 1-based lookup.
        const Face& face(int id) const;

        /// H-representation of Y0 as a LinearSystem in y (2n inequalities).
        LinearSystem hrep() const;

        friend DualPolytope buildDualPolytope(const MatrixXr& A);

    private:
        MatrixXr A_;
        std::vector<VectorXr> vertices_;
        std::vector<Face> faces_;
};

/**
 * Validate rank(A) = m and boundedness of Y0, enumerate vertices and the
 * face lattice.  Faces receive ids in a canonical order: active-set size
 * descending, ties broken lexicographically on the signature.
 *
 * @throws RankDeficientException when rank(A) < m.
 */
DualPolytope buildDualPolytope(const MatrixXr& A);

/// All nonempty faces, one per distinct sign partition.
inline const std::vector<Face>& enumerateFaces(const DualPolytope& P) { return P.faces(); }

/**
 * Sign partition of a single point of Y0.
 *
 * @throws PointOutsidePolytopeException when ||A^T y||_inf > 1.
 */
SignPartition partitionOfPoint(const MatrixXr& A, const VectorXr& y);

}   // namespace l1s

#endif
