#include "kemeny/random_chain.hpp"

#include "kemeny/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace kemeny {

namespace {

Index uniform_index(SplitMix64& rng, Index bound)
{
    return static_cast<Index>(uniform01(rng) * static_cast<double>(bound));
}

double log_uniform_weight(SplitMix64& rng)
{
    const double lo = std::log(0.1);
    const double hi = std::log(10.0);
    return std::exp(lo + (hi - lo) * uniform01(rng));
}

bool bipartite(const Matrix& W)
{
    const Index n = W.rows();
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    std::vector<Index> stack;
    for (Index s = 0; s < n; ++s) {
        if (color[s] >= 0)
            continue;
        color[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            const Index u = stack.back();
            stack.pop_back();
            for (Index v = 0; v < n; ++v) {
                if (W(u, v) <= 0.0)
                    continue;
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace

Matrix random_admissible_weights(Index n, std::uint64_t seed)
{
    if (n < 3)
        throw Error(ErrorKind::TooSmall, "random admissible chains need at least 3 states");
    SplitMix64 rng(mix64(seed));
    Matrix W = Matrix::Zero(n, n);
    auto connect = [&](Index u, Index v) {
        if (u == v || W(u, v) > 0.0)
            return;
        const double w = log_uniform_weight(rng);
        W(u, v) = w;
        W(v, u) = w;
    };

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    for (Index i = n - 1; i > 0; --i)
        std::swap(order[i], order[uniform_index(rng, i + 1)]);
    for (Index i = 1; i < n; ++i)
        connect(order[i], order[uniform_index(rng, i)]);

    const Index extra = uniform_index(rng, n + 1);
    for (Index e = 0; e < extra; ++e)
        connect(uniform_index(rng, n), uniform_index(rng, n));

    if (bipartite(W)) {
        // Close a triangle over an existing edge.
        Index u = 0;
        Index v = 0;
        do {
            u = uniform_index(rng, n);
            v = uniform_index(rng, n);
        } while (W(u, v) <= 0.0);
        Index w = u;
        while (w == u || w == v)
            w = uniform_index(rng, n);
        connect(u, w);
        connect(v, w);
    }
    return W;
}

MarkovChain random_admissible_chain(Index n, std::uint64_t seed)
{
    const Matrix W = random_admissible_weights(n, seed);
    const Vector degree = W.rowwise().sum();
    Matrix P = degree.cwiseInverse().asDiagonal() * W;
    return build_chain(default_labels(n), P);
}

MarkovChain random_nonreversible_chain(Index n, std::uint64_t seed)
{
    SplitMix64 rng(mix64(seed ^ 0x5bd1e995ULL));
    Matrix P = Matrix::Zero(n, n);
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y)
            if (x != y)
                P(x, y) = 0.05 + uniform01(rng);
        P.row(x) /= P.row(x).sum();
    }
    return build_chain(default_labels(n), P);
}

} // namespace kemeny
