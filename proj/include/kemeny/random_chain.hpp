#pragma once

#include "kemeny/markov_core.hpp"

#include <cstdint>

namespace kemeny {

/// Weighted random walk on a random connected, non-bipartite graph.
///
/// The graph is a random spanning tree plus up to n extra edges; if it is
/// still bipartite, one triangle is closed on an existing edge. Edge
/// weights are log-uniform in [0.1, 10]. P is the weighted walk and its
/// stationary distribution is the normalized weighted degree.
MarkovChain random_admissible_chain(Index n, std::uint64_t seed);

/// Symmetric edge weights behind random_admissible_chain(n, seed).
Matrix random_admissible_weights(Index n, std::uint64_t seed);

/// Random loop-free stochastic matrix with all off-diagonal entries
/// positive; irreducible and aperiodic, almost surely not reversible.
MarkovChain random_nonreversible_chain(Index n, std::uint64_t seed);

} // namespace kemeny
