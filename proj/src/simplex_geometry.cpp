#include "kemeny/simplex_geometry.hpp"

#include "kemeny/random.hpp"

#include <cmath>
#include <limits>

namespace kemeny {

BarycentricVector BarycentricVector::from_values(Vector coords, double tol)
{
    if (coords.size() == 0)
        throw Error(ErrorKind::DimensionMismatch, "empty coordinate vector");
    if (!coords.allFinite())
        throw Error(ErrorKind::NotUnitSum, "coordinates must be finite");
    const double sum = coords.sum();
    if (std::abs(sum - 1.0) > tol)
        throw Error(ErrorKind::NotUnitSum, "coordinates sum to " + std::to_string(sum) + ", not 1");
    return BarycentricVector(std::move(coords));
}

BarycentricVector BarycentricVector::vertex(Index n, Index x)
{
    if (x < 0 || x >= n)
        throw Error(ErrorKind::UnknownState, "vertex index out of range");
    return BarycentricVector(Vector::Unit(n, x));
}

BarycentricVector BarycentricVector::from_distribution(const StationaryDistribution& pi)
{
    return BarycentricVector(pi.values());
}

Vector coords_to_point(const Matrix& V, const BarycentricVector& p_hat)
{
    if (V.cols() != p_hat.size())
        throw Error(ErrorKind::DimensionMismatch, "coordinate length does not match vertex count");
    return V * p_hat.values();
}

double squared_distance_qf(const CommuteTimeMatrix& C, const BarycentricVector& a_hat,
                           const BarycentricVector& b_hat)
{
    if (a_hat.size() != C.size() || b_hat.size() != C.size())
        throw Error(ErrorKind::DimensionMismatch, "coordinate length does not match commute matrix");
    const Vector d = a_hat.values() - b_hat.values();
    const double q = -0.5 * d.dot(C.matrix() * d);
    // Rounding can push an exact zero slightly negative.
    return q > 0.0 ? q : 0.0;
}

double facet_distance(const BarycentricVector& p_hat, const StationaryDistribution& pi, Index x)
{
    if (p_hat.size() != pi.size())
        throw Error(ErrorKind::DimensionMismatch, "coordinate length does not match distribution");
    if (x < 0 || x >= pi.size())
        throw Error(ErrorKind::UnknownState, "state index " + std::to_string(x) + " out of range");
    return std::abs(p_hat(x)) / std::sqrt(pi(x));
}

double total_squared_facet_distance(const BarycentricVector& p_hat, const StationaryDistribution& pi)
{
    if (p_hat.size() != pi.size())
        throw Error(ErrorKind::DimensionMismatch, "coordinate length does not match distribution");
    return (p_hat.values().array().square() / pi.values().array()).sum();
}

CircumcenterResult circumcenter(const CommuteTimeMatrix& C)
{
    const Index n = C.size();
    Matrix A = Matrix::Zero(n + 1, n + 1);
    A.topLeftCorner(n, n) = C.matrix();
    A.topRightCorner(n, 1).setConstant(-2.0);
    A.bottomLeftCorner(1, n).setConstant(1.0);
    Vector rhs = Vector::Zero(n + 1);
    rhs(n) = 1.0;

    Eigen::FullPivLU<Matrix> lu(A);
    if (!lu.isInvertible())
        throw Error(ErrorKind::SingularSystem, "circumcenter system is singular (degenerate simplex)");
    const Vector sol = lu.solve(rhs);
    if (!sol.allFinite())
        throw Error(ErrorKind::SingularSystem, "circumcenter solution is not finite");

    Vector gamma = sol.head(n);
    const double R2 = sol(n);
    const double residual = (C.matrix() * gamma - Vector::Constant(n, 2.0 * R2)).cwiseAbs().maxCoeff();
    // The bordered solve leaves sum(gamma) within rounding of 1.
    return CircumcenterResult{BarycentricVector::from_values(std::move(gamma)), R2,
                              std::sqrt(std::max(R2, 0.0)), residual};
}

LemoinePoint lemoine(const StationaryDistribution& pi)
{
    auto ell = BarycentricVector::from_distribution(pi);
    const double total = total_squared_facet_distance(ell, pi);
    return LemoinePoint{std::move(ell), total};
}

ProbeReport minimality_probe(const StationaryDistribution& pi, std::size_t trials, std::uint64_t seed)
{
    const Index n = pi.size();
    ProbeReport report;
    report.trials = trials;
    report.min_excess = std::numeric_limits<double>::infinity();
    const double log_lo = std::log(1e-6);
    const double log_hi = std::log(1e-1);

    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(substream_seed(seed, t));
        Vector z(n);
        do {
            for (Index i = 0; i < n; ++i)
                z(i) = standard_normal(rng);
            z.array() -= z.mean();
        } while (z.norm() == 0.0);
        z.normalize();
        const double eps = std::exp(log_lo + (log_hi - log_lo) * uniform01(rng));

        Vector p = pi.values() + eps * z;
        const auto p_hat = BarycentricVector::from_values(std::move(p));
        const double excess = total_squared_facet_distance(p_hat, pi) - 1.0;
        if (excess <= 0.0)
            ++report.violations;
        report.min_excess = std::min(report.min_excess, excess);
    }
    if (trials == 0)
        report.min_excess = 0.0;
    return report;
}

} // namespace kemeny
