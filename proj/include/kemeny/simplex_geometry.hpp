#pragma once

#include "kemeny/markov_core.hpp"

#include <cstdint>

namespace kemeny {

/// Unit-sum weights over the states identifying a point p = sum_x p(x) v_x.
/// Negative entries are allowed; such points lie outside the simplex.
class BarycentricVector {
public:
    /// Throws NotUnitSum when |sum - 1| > tol.
    static BarycentricVector from_values(Vector coords, double tol = kTolSolve);
    /// delta_x: the coordinates of vertex x.
    static BarycentricVector vertex(Index n, Index x);
    static BarycentricVector from_distribution(const StationaryDistribution& pi);

    Index size() const noexcept { return coords_.size(); }
    const Vector& values() const noexcept { return coords_; }
    double operator()(Index x) const { return coords_(x); }

private:
    explicit BarycentricVector(Vector coords) : coords_(std::move(coords)) {}
    Vector coords_;
};

/// V p_hat, a point of the (n-1)-dimensional embedding space.
Vector coords_to_point(const Matrix& V, const BarycentricVector& p_hat);

/// Squared distance between two points given only their coordinates and
/// the commute times: -1/2 (a - b)^T C (a - b).
double squared_distance_qf(const CommuteTimeMatrix& C, const BarycentricVector& a_hat,
                           const BarycentricVector& b_hat);

/// Distance from p to the facet opposite vertex x: |p_hat(x)| / sqrt(pi(x)).
double facet_distance(const BarycentricVector& p_hat, const StationaryDistribution& pi, Index x);

/// sum_x p_hat(x)^2 / pi(x), the total squared distance to all facets.
double total_squared_facet_distance(const BarycentricVector& p_hat, const StationaryDistribution& pi);

struct CircumcenterResult {
    BarycentricVector gamma_hat;
    double R_squared = 0.0;
    double R = 0.0;
    double residual = 0.0; ///< max |C gamma_hat - 2 R^2|

    /// All coordinates nonnegative.
    bool inside() const { return (gamma_hat.values().array() >= 0.0).all(); }
};

/// Solves the bordered system [C, -2*1; 1^T, 0] [gamma_hat; R^2] = [0; 1].
/// Throws SingularSystem when the simplex is degenerate.
CircumcenterResult circumcenter(const CommuteTimeMatrix& C);

struct LemoinePoint {
    BarycentricVector ell_hat;
    double total_squared_facet_distance = 0.0;
};

/// The Lemoine point has coordinates pi; the minimal total is also recorded.
LemoinePoint lemoine(const StationaryDistribution& pi);

struct ProbeReport {
    std::size_t trials = 0;
    std::size_t violations = 0; ///< perturbed points with total <= 1
    double min_excess = 0.0;    ///< smallest observed total - 1
};

/// Samples p_hat = pi + eps * z with 1^T z = 0, |z| = 1 and eps log-uniform
/// in [1e-6, 1e-1], and checks the total squared facet distance exceeds 1.
ProbeReport minimality_probe(const StationaryDistribution& pi, std::size_t trials, std::uint64_t seed);

} // namespace kemeny
