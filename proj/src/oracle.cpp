#include "l1s/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "l1s/exceptions.hpp"
#include "l1s/linalg.hpp"
#include "l1s/simplex.hpp"

namespace l1s {

namespace {

// Entries of |x| at or below this are classified as zero when matching
// subgradient signs; well above arithmetic noise, well below desk-scale
// solution magnitudes.
constexpr double kSignTolerance = 1e-9;

Eigen::VectorXd softThreshold(const Eigen::VectorXd& v, double threshold)
{
    Eigen::VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        if (v(i) > threshold)
            out(i) = v(i) - threshold;
        else if (v(i) < -threshold)
            out(i) = v(i) + threshold;
        else
            out(i) = 0.0;
    }
    return out;
}

double objectiveValue(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double lambda,
                      const Eigen::VectorXd& x)
{
    return x.lpNorm<1>() + (A * x - b).squaredNorm() / (2.0 * lambda);
}

}   // anonymous namespace

double kktResidual(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double lambda,
                   const Eigen::VectorXd& x)
{
    const Eigen::VectorXd g = A.transpose() * (b - A * x);
    double residual = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        if (std::abs(x(i)) > kSignTolerance)
            residual = std::max(residual, std::abs(g(i) - lambda * (x(i) > 0 ? 1.0 : -1.0)));
        else
            residual = std::max(residual, std::max(0.0, std::abs(g(i)) - lambda));
    }
    if (lambda == 0.0)
        residual = std::max(residual, (A * x - b).lpNorm<Eigen::Infinity>());
    return residual;
}

OracleResult proxGradLasso(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double lambda,
                           double tol, int maxIter)
{
    if (lambda <= 0.0)
        throw NonPositiveLambdaException("prox_grad_lasso: lambda must be positive");
    if (tol <= 0.0)
        throw std::invalid_argument("prox_grad_lasso: tol must be positive");

    const double L = std::pow(spectralNorm(A), 2);
    const double step = (L > 0.0) ? lambda / L : 1.0;

    OracleResult result;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(A.cols());
    Eigen::VectorXd y = x;
    double t = 1.0;
    double fx = objectiveValue(A, b, lambda, x);

    for (int iter = 1; iter <= maxIter; ++iter)
    {
        const Eigen::VectorXd grad = A.transpose() * (A * y - b) / lambda;
        Eigen::VectorXd xNext = softThreshold(y - step * grad, step);
        double fNext = objectiveValue(A, b, lambda, xNext);
        if (fNext > fx)
        {
            // Function-value restart: drop the momentum and take a plain
            // descent step from x, which cannot increase the objective.
            y = x;
            t = 1.0;
            const Eigen::VectorXd g2 = A.transpose() * (A * y - b) / lambda;
            xNext = softThreshold(y - step * g2, step);
            fNext = objectiveValue(A, b, lambda, xNext);
        }
        const double tNext = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
        y = xNext + ((t - 1.0) / tNext) * (xNext - x);
        t = tNext;
        x = xNext;
        fx = fNext;

        result.iterations = iter;
        result.kktResidual = kktResidual(A, b, lambda, x);
        if (result.kktResidual <= tol)
        {
            result.converged = true;
            break;
        }
    }
    result.x = x;
    result.objective = fx;
    return result;
}

VectorXr bpLp(const MatrixXr& A, const VectorXr& b)
{
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    LinearSystem sys(2 * n);
    for (int r = 0; r < m; ++r)
    {
        VectorXr coeff(2 * n);
        coeff.head(n) = A.row(r).transpose();
        coeff.tail(n) = -A.row(r).transpose();
        sys.addEquality(std::move(coeff), b(r));
    }
    for (int j = 0; j < 2 * n; ++j)
    {
        VectorXr coeff = VectorXr::Zero(2 * n);
        coeff(j) = -1;
        sys.addInequality(std::move(coeff), Rational(0));
    }
    const LpOutcome out = lpSolve(VectorXr::Ones(2 * n), LpSense::Minimize, sys);
    if (out.status != LpStatus::Optimal)
        throw std::logic_error("bp_lp: the split LP must be solvable for full-row-rank A");
    return VectorXr(out.point.head(n) - out.point.tail(n));
}

}   // namespace l1s
