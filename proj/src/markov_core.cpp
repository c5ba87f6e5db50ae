#include "kemeny/markov_core.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace kemeny {

namespace {

std::string describe_row(Index row, double value)
{
    std::ostringstream os;
    os.precision(17);
    os << "row " << row << " sums to " << value;
    return os.str();
}

// Breadth-first reachability from state 0 along edges where adj(from, to) > 0.
template <typename Adjacent>
Index reachable_count(Index n, Adjacent adj)
{
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<Index> frontier;
    seen[0] = 1;
    frontier.push(0);
    Index count = 1;
    while (!frontier.empty()) {
        const Index u = frontier.front();
        frontier.pop();
        for (Index v = 0; v < n; ++v) {
            if (!seen[static_cast<std::size_t>(v)] && adj(u, v)) {
                seen[static_cast<std::size_t>(v)] = 1;
                frontier.push(v);
                ++count;
            }
        }
    }
    return count;
}

} // namespace

Index MarkovChain::index_of(const std::string& label) const
{
    const auto it = std::find(states_.begin(), states_.end(), label);
    if (it == states_.end())
        throw Error(ErrorKind::UnknownState, "unknown state '" + label + "'");
    return static_cast<Index>(it - states_.begin());
}

std::vector<std::string> default_labels(Index n)
{
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        labels.push_back(std::to_string(i + 1));
    return labels;
}

MarkovChain build_chain(std::vector<std::string> states, const Matrix& P, double tol_stoch)
{
    const Index n = P.rows();
    if (n < 1 || P.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "transition matrix must be square and non-empty");
    if (static_cast<Index>(states.size()) != n)
        throw Error(ErrorKind::DimensionMismatch,
                    "expected " + std::to_string(n) + " state labels, got " +
                        std::to_string(states.size()));
    {
        auto sorted = states;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorKind::DimensionMismatch, "state labels must be distinct");
    }

    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
            if (!std::isfinite(P(x, y)))
                throw Error(ErrorKind::NonStochasticRow,
                            "non-finite transition probability in row " + std::to_string(x));
            if (P(x, y) < 0.0)
                throw Error(ErrorKind::NegativeEntry,
                            "negative transition probability P(" + states[x] + ", " + states[y] + ")");
        }
    }
    for (Index x = 0; x < n; ++x) {
        if (P(x, x) != 0.0)
            throw Error(ErrorKind::SelfLoop, "state '" + states[x] + "' has a self-loop");
    }

    Matrix normalized = P;
    for (Index x = 0; x < n; ++x) {
        const double sum = P.row(x).sum();
        if (std::abs(sum - 1.0) > tol_stoch)
            throw Error(ErrorKind::NonStochasticRow, describe_row(x, sum));
        normalized.row(x) /= sum;
    }

    if (n < 3)
        throw Error(ErrorKind::TooSmall,
                    "a loop-free reversible aperiodic chain needs at least 3 states");

    return MarkovChain(std::move(states), std::move(normalized));
}

StationaryDistribution StationaryDistribution::from_values(Vector pi, double tol)
{
    if (pi.size() == 0)
        throw Error(ErrorKind::DimensionMismatch, "empty distribution");
    if (!(pi.array() > 0.0).all())
        throw Error(ErrorKind::InconsistentInputs, "stationary distribution must be strictly positive");
    if (std::abs(pi.sum() - 1.0) > tol)
        throw Error(ErrorKind::NotUnitSum, "stationary distribution must sum to one");
    return StationaryDistribution(std::move(pi));
}

StationaryDistribution stationary_distribution(const MarkovChain& chain)
{
    const Index n = chain.size();
    const Matrix A = chain.P().transpose() - Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
    const Vector& sigma = svd.singularValues();

    const double cutoff = kTolSolve * std::max(1.0, sigma(0));
    Index null_dim = 0;
    for (Index i = 0; i < n; ++i)
        if (sigma(i) <= cutoff)
            ++null_dim;
    if (null_dim != 1)
        throw Error(ErrorKind::Reducible,
                    "null space of (P^T - I) has dimension " + std::to_string(null_dim));

    Vector pi = svd.matrixV().col(n - 1);
    pi /= pi.sum();
    if (!(pi.array() > 0.0).all())
        throw Error(ErrorKind::Reducible, "stationary vector has non-positive entries");
    return StationaryDistribution::from_values(std::move(pi));
}

double stationary_residual(const MarkovChain& chain, const StationaryDistribution& pi)
{
    const Vector r = chain.P().transpose() * pi.values() - pi.values();
    return r.cwiseAbs().maxCoeff();
}

std::optional<std::string> Admissibility::first_failure() const
{
    if (!irreducible) return "irreducible";
    if (!aperiodic) return "aperiodic";
    if (!reversible) return "reversible";
    if (!loop_free) return "loop-free";
    return std::nullopt;
}

bool support_strongly_connected(const MarkovChain& chain)
{
    const Matrix& P = chain.P();
    const Index n = chain.size();
    const auto forward = reachable_count(n, [&](Index u, Index v) { return P(u, v) > 0.0; });
    const auto backward = reachable_count(n, [&](Index u, Index v) { return P(v, u) > 0.0; });
    return forward == n && backward == n;
}

bool support_bipartite(const MarkovChain& chain)
{
    const Matrix& P = chain.P();
    const Index n = chain.size();
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    for (Index start = 0; start < n; ++start) {
        if (color[start] >= 0)
            continue;
        color[start] = 0;
        std::queue<Index> frontier;
        frontier.push(start);
        while (!frontier.empty()) {
            const Index u = frontier.front();
            frontier.pop();
            for (Index v = 0; v < n; ++v) {
                if (v == u || (P(u, v) <= 0.0 && P(v, u) <= 0.0))
                    continue;
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    frontier.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

double detailed_balance_violation(const MarkovChain& chain, const StationaryDistribution& pi)
{
    if (pi.size() != chain.size())
        throw Error(ErrorKind::InconsistentInputs, "distribution and chain sizes differ");
    const Matrix flow = pi.values().asDiagonal() * chain.P();
    return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

Admissibility check_admissible(const MarkovChain& chain, const StationaryDistribution& pi,
                               double tol_solve)
{
    Admissibility verdict;
    verdict.irreducible = support_strongly_connected(chain);
    verdict.aperiodic = !support_bipartite(chain);
    verdict.reversible = detailed_balance_violation(chain, pi) < tol_solve;
    verdict.loop_free = (chain.P().diagonal().array() == 0.0).all();
    return verdict;
}

HittingTimeMatrix hitting_times(const MarkovChain& chain, const StationaryDistribution& pi,
                                const Matrix& L_dagger)
{
    const Index n = chain.size();
    if (pi.size() != n || L_dagger.rows() != n || L_dagger.cols() != n)
        throw Error(ErrorKind::InconsistentInputs, "chain, distribution and pseudoinverse sizes differ");

    // Column x of L^+ (pi 1^T - I) solves L h_x = pi - delta_x up to a constant.
    const Vector a = L_dagger * pi.values();
    Matrix H(n, n);
    for (Index x = 0; x < n; ++x) {
        const double offset = a(x) - L_dagger(x, x);
        for (Index t = 0; t < n; ++t)
            H(t, x) = (a(t) - L_dagger(t, x)) - offset;
        H(x, x) = 0.0;
    }
    return HittingTimeMatrix(std::move(H));
}

double recursion_residual(const MarkovChain& chain, const HittingTimeMatrix& H)
{
    const Index n = chain.size();
    const Matrix& P = chain.P();
    // sum_z P_tz (1 + h_zx) = 1 + (P H)_tx since rows of P sum to one.
    const Matrix expected = Matrix::Ones(n, n) + P * H.matrix();
    double worst = 0.0;
    for (Index x = 0; x < n; ++x)
        for (Index t = 0; t < n; ++t)
            if (t != x)
                worst = std::max(worst, std::abs(H(t, x) - expected(t, x)));
    return worst;
}

CommuteTimeMatrix CommuteTimeMatrix::from_matrix(Matrix C, double tol)
{
    if (C.rows() != C.cols())
        throw Error(ErrorKind::DimensionMismatch, "commute-time matrix must be square");
    if ((C - C.transpose()).cwiseAbs().maxCoeff() > tol)
        throw Error(ErrorKind::InconsistentInputs, "commute-time matrix must be symmetric");
    if (!(C.diagonal().array() == 0.0).all())
        throw Error(ErrorKind::InconsistentInputs, "commute-time matrix must have a zero diagonal");
    if ((C.array() < 0.0).any())
        throw Error(ErrorKind::NegativeEntry, "commute times must be nonnegative");
    return CommuteTimeMatrix(std::move(C));
}

CommuteTimeMatrix commute_times(const HittingTimeMatrix& H)
{
    return CommuteTimeMatrix(H.matrix() + H.matrix().transpose());
}

} // namespace kemeny
