#pragma once

// Shared chains, frozen expected values and test-only oracles. The oracles
// here never call the library routes they are used to check.

#include "kemeny/markov_core.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace fixtures {

using kemeny::Index;
using kemeny::Matrix;
using kemeny::Vector;

// Three-state example: weights w12 = w13 = 0.2, w23 = 0.1.
inline Matrix chain_a_matrix()
{
    Matrix P(3, 3);
    P << 0.0, 1.0 / 2, 1.0 / 2,
         2.0 / 3, 0.0, 1.0 / 3,
         2.0 / 3, 1.0 / 3, 0.0;
    return P;
}

// Symmetric walk on the triangle.
inline Matrix chain_b_matrix()
{
    Matrix P(3, 3);
    P << 0.0, 0.5, 0.5,
         0.5, 0.0, 0.5,
         0.5, 0.5, 0.0;
    return P;
}

// Weighted walk on 4 states, edge weights
// w01 = 1, w02 = 2, w12 = 3, w13 = 1, w23 = 1/2.
inline Matrix chain_w_matrix()
{
    Matrix W(4, 4);
    W << 0, 1, 2, 0,
         1, 0, 3, 1,
         2, 3, 0, 0.5,
         0, 1, 0.5, 0;
    Vector deg = W.rowwise().sum();
    return deg.cwiseInverse().asDiagonal() * W;
}

inline kemeny::MarkovChain chain_a() { return kemeny::build_chain({"1", "2", "3"}, chain_a_matrix()); }
inline kemeny::MarkovChain chain_b() { return kemeny::build_chain({"1", "2", "3"}, chain_b_matrix()); }
inline kemeny::MarkovChain chain_w() { return kemeny::build_chain(kemeny::default_labels(4), chain_w_matrix()); }

// Exact values from rational arithmetic (sympy, first-step analysis).
namespace chain_a_exact {
inline const Vector pi = (Vector(3) << 0.4, 0.3, 0.3).finished();
inline const Matrix H = (Matrix(3, 3) << 0, 9.0 / 4, 9.0 / 4, 3.0 / 2, 0, 5.0 / 2, 3.0 / 2, 5.0 / 2, 0).finished();
inline const Matrix C = (Matrix(3, 3) << 0, 3.75, 3.75, 3.75, 0, 5, 3.75, 5, 0).finished();
inline const Vector gamma = (Vector(3) << 0.25, 0.375, 0.375).finished();
inline constexpr double R_squared = 45.0 / 32;  // 1.40625
inline constexpr double dist_squared = 9.0 / 160; // 0.05625
inline constexpr double K = 27.0 / 20;          // 1.35
} // namespace chain_a_exact

namespace chain_w_exact {
inline const Vector pi = (Vector(4) << 1.0 / 5, 1.0 / 3, 11.0 / 30, 1.0 / 10).finished();
inline const Matrix C = (Matrix(4, 4) << 0, 20.0 / 3, 65.0 / 12, 185.0 / 12,
                                         20.0 / 3, 0, 15.0 / 4, 125.0 / 12,
                                         65.0 / 12, 15.0 / 4, 0, 35.0 / 3,
                                         185.0 / 12, 125.0 / 12, 35.0 / 3, 0).finished();
inline const Vector gamma = (Vector(4) << 5.0 / 12, 1.0 / 18, 5.0 / 72, 11.0 / 24).finished();
inline constexpr double R_squared = 125.0 / 32;
inline constexpr double dist_squared = 731.0 / 480;
inline constexpr double K = 143.0 / 60;
} // namespace chain_w_exact

/// Hitting times by first-step analysis: for each target x solve
/// (I - P restricted to the other states) h = 1.
inline Matrix first_step_hitting_times(const Matrix& P)
{
    const Index n = P.rows();
    Matrix H = Matrix::Zero(n, n);
    for (Index x = 0; x < n; ++x) {
        std::vector<Index> others;
        for (Index t = 0; t < n; ++t)
            if (t != x)
                others.push_back(t);
        const auto m = static_cast<Index>(others.size());
        Matrix A = Matrix::Identity(m, m);
        for (Index i = 0; i < m; ++i)
            for (Index k = 0; k < m; ++k)
                A(i, k) -= P(others[i], others[k]);
        const Vector h = A.partialPivLu().solve(Vector::Ones(m));
        for (Index i = 0; i < m; ++i)
            H(others[i], x) = h(i);
    }
    return H;
}

/// Euclidean distance from point p to the affine hull of the columns of V
/// other than x, through an orthonormal basis of the facet directions.
inline double hyperplane_distance(const Matrix& V, Index x, const Vector& p)
{
    const Index n = V.cols();
    const Index base = x == 0 ? 1 : 0;
    Matrix dirs(V.rows(), n - 2);
    Index k = 0;
    for (Index y = 0; y < n; ++y)
        if (y != x && y != base)
            dirs.col(k++) = V.col(y) - V.col(base);
    const Vector r = p - V.col(base);
    if (dirs.cols() == 0)
        return r.norm();
    Eigen::HouseholderQR<Matrix> qr(dirs);
    const Matrix Q = qr.householderQ() * Matrix::Identity(dirs.rows(), dirs.cols());
    return (r - Q * (Q.transpose() * r)).norm();
}

/// Unit-sum vector with entries spread over [-0.5, 1.5) before normalizing.
template <typename Rng>
Vector random_unit_sum(Index n, Rng& rng)
{
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    Vector v(n);
    for (;;) {
        for (Index i = 0; i < n; ++i)
            v(i) = u(rng);
        if (std::abs(v.sum()) > 0.1)
            break;
    }
    return v / v.sum();
}

/// Relabels states: chain'(i, j) = P(perm[i], perm[j]).
inline Matrix permute(const Matrix& P, const std::vector<Index>& perm)
{
    const Index n = P.rows();
    Matrix Q(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            Q(i, j) = P(perm[i], perm[j]);
    return Q;
}

} // namespace fixtures
