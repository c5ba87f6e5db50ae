#pragma once

#include "kemeny/errors.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace kemeny {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Row-sum validation. Deviations below this are renormalized, anything
// larger is rejected.
inline constexpr double kTolStoch = 1e-12;
// Linear-system residuals.
inline constexpr double kTolSolve = 1e-9;
// Agreement between independent routes to the same quantity.
inline constexpr double kTolCross = 1e-8;

struct Tolerances {
    double stoch = kTolStoch;
    double solve = kTolSolve;
    double cross = kTolCross;
};

/// A finite, loop-free, row-stochastic transition matrix with state labels.
/// Instances only come out of build_chain() and are immutable afterwards.
class MarkovChain {
public:
    Index size() const noexcept { return P_.rows(); }
    const std::vector<std::string>& states() const noexcept { return states_; }
    const Matrix& P() const noexcept { return P_; }
    double P(Index x, Index y) const { return P_(x, y); }

    /// Position of a label in states(); throws UnknownState.
    Index index_of(const std::string& label) const;

private:
    MarkovChain(std::vector<std::string> states, Matrix P)
        : states_(std::move(states)), P_(std::move(P)) {}

    friend MarkovChain build_chain(std::vector<std::string>, const Matrix&, double);

    std::vector<std::string> states_;
    Matrix P_;
};

/// Validates and wraps a transition matrix. Checks run in the order
/// dimensions, entries, self-loops, row sums, size, so a 2-state chain with
/// a nonzero diagonal reports SelfLoop.
MarkovChain build_chain(std::vector<std::string> states, const Matrix& P,
                        double tol_stoch = kTolStoch);

/// Labels "1".."n".
std::vector<std::string> default_labels(Index n);

class StationaryDistribution {
public:
    /// Wraps a known distribution; requires strictly positive entries
    /// summing to one within tol.
    static StationaryDistribution from_values(Vector pi, double tol = kTolSolve);

    Index size() const noexcept { return pi_.size(); }
    const Vector& values() const noexcept { return pi_; }
    double operator()(Index x) const { return pi_(x); }

private:
    explicit StationaryDistribution(Vector pi) : pi_(std::move(pi)) {}
    Vector pi_;
};

/// Left null vector of (P - I) from a dense SVD, normalized to unit sum.
/// Throws Reducible when the null space is not one-dimensional or the
/// vector is not strictly positive.
StationaryDistribution stationary_distribution(const MarkovChain& chain);

/// max_y |(pi^T P)_y - pi_y|
double stationary_residual(const MarkovChain& chain, const StationaryDistribution& pi);

struct Admissibility {
    bool irreducible = false;
    bool aperiodic = false;
    bool reversible = false;
    bool loop_free = false;

    bool all() const noexcept { return irreducible && aperiodic && reversible && loop_free; }
    /// Name of the first failing condition, if any.
    std::optional<std::string> first_failure() const;
};

/// Directed support graph of P is strongly connected.
bool support_strongly_connected(const MarkovChain& chain);
/// Undirected support graph (edge when P_xy > 0 or P_yx > 0) is 2-colorable.
bool support_bipartite(const MarkovChain& chain);

/// Largest detailed-balance violation |pi(x)P_xy - pi(y)P_yx|.
double detailed_balance_violation(const MarkovChain& chain, const StationaryDistribution& pi);

Admissibility check_admissible(const MarkovChain& chain, const StationaryDistribution& pi,
                               double tol_solve = kTolSolve);

/// H(t, x) is the expected number of steps from t to first arrival at x.
class HittingTimeMatrix {
public:
    Index size() const noexcept { return H_.rows(); }
    const Matrix& matrix() const noexcept { return H_; }
    double operator()(Index from, Index to) const { return H_(from, to); }

private:
    explicit HittingTimeMatrix(Matrix H) : H_(std::move(H)) {}
    friend HittingTimeMatrix hitting_times(const MarkovChain&, const StationaryDistribution&,
                                           const Matrix&);
    Matrix H_;
};

/// Solves L h_x = pi - delta_x for every target x through the Laplacian
/// pseudoinverse, then shifts each column so h_xx = 0.
HittingTimeMatrix hitting_times(const MarkovChain& chain, const StationaryDistribution& pi,
                                const Matrix& L_dagger);

/// max over t != x of |h_tx - sum_z P_tz (1 + h_zx)|
double recursion_residual(const MarkovChain& chain, const HittingTimeMatrix& H);

/// Symmetric, zero-diagonal matrix of commute times c_xy = h_xy + h_yx.
class CommuteTimeMatrix {
public:
    /// Accepts any symmetric, zero-diagonal, entrywise nonnegative matrix.
    static CommuteTimeMatrix from_matrix(Matrix C, double tol = kTolSolve);

    Index size() const noexcept { return C_.rows(); }
    const Matrix& matrix() const noexcept { return C_; }
    double operator()(Index x, Index y) const { return C_(x, y); }

private:
    explicit CommuteTimeMatrix(Matrix C) : C_(std::move(C)) {}
    friend CommuteTimeMatrix commute_times(const HittingTimeMatrix&);
    friend CommuteTimeMatrix commute_via_pinv(const Matrix&);
    Matrix C_;
};

CommuteTimeMatrix commute_times(const HittingTimeMatrix& H);

} // namespace kemeny
