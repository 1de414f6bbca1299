/**
 * Independent numerical solvers used to validate the structural machinery:
 * accelerated proximal gradient for lambda > 0, the exact basis-pursuit LP
 * for lambda = 0, and a first-order optimality residual meter.  None of this
 * shares code paths with the exact decomposition, which is the point.
 */

#ifndef L1S_ORACLE_HPP
#define L1S_ORACLE_HPP

#include <Eigen/Dense>

#include "rational.hpp"

namespace l1s {

struct OracleResult
{
    Eigen::VectorXd x;
    double objective = 0.0;      // ||x||_1 + (1/(2 lambda)) ||A x - b||^2
    double kktResidual = 0.0;
    int iterations = 0;
    bool converged = false;      // implies kktResidual <= requested tolerance
};

/**
 * FISTA with soft-thresholding prox and function-value restart, fixed step
 * lambda / L with L the largest eigenvalue of A^T A (power iteration).
 * Stops when the optimality residual drops to tol; after the first restart
 * the objective sequence is nonincreasing (a restart step is a plain descent
 * step).
 *
 * @throws NonPositiveLambdaException when lambda <= 0.
 */
OracleResult proxGradLasso(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double lambda,
                           double tol = 1e-10, int maxIter = 200000);

/// Exact basis pursuit min ||x||_1 s.t. A x = b through the rational
/// simplex on the split reformulation x = u - v, u, v >= 0.
VectorXr bpLp(const MatrixXr& A, const VectorXr& b);

/**
 * Max-norm violation of the first-order optimality system
 * A^T (b - A x) = lambda * s with s a subgradient of ||.||_1 at x: entries
 * with |x_i| above a sign tolerance must match lambda * sign(x_i), the rest
 * must satisfy |g_i| <= lambda.  At lambda = 0 the equality-constraint
 * violation ||A x - b||_inf is added, since feasibility replaces the
 * gradient condition there.
 */
double kktResidual(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double lambda,
                   const Eigen::VectorXd& x);

}   // namespace l1s

#endif
