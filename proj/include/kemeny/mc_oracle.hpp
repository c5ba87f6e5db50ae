#pragma once

#include "kemeny/markov_core.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace kemeny {

inline constexpr std::uint64_t kStepCap = 10'000'000;

enum class Execution { Serial, Parallel };

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    /// False for a single sample; std_error is then reported as 0.
    bool variance_defined = false;
};

/// Inverse-CDF next-state sampling over precomputed cumulative rows.
class TransitionSampler {
public:
    /// Each row of P is one categorical distribution over its columns.
    explicit TransitionSampler(const Matrix& P);

    /// u in [0, 1). Never returns a zero-probability target.
    Index next(Index from, double u) const;

private:
    Index n_; // row length
    std::vector<double> cumulative_; // row-major n x n
    std::vector<Index> last_positive_;
};

/// Trajectory i draws from substream_seed(seed, i) only, so Serial and
/// Parallel execution return bit-identical estimates. Throws CapExceeded if
/// any trajectory runs for step_cap steps without arriving.
McEstimate sample_hitting_time(const MarkovChain& chain, Index from, Index to, std::size_t samples,
                               std::uint64_t seed, Execution exec = Execution::Parallel,
                               std::uint64_t step_cap = kStepCap);

/// Starts every trajectory at the first state, draws the target from pi and
/// counts steps to it (0 when the target is the start).
McEstimate estimate_kemeny(const MarkovChain& chain, const StationaryDistribution& pi,
                           std::size_t samples, std::uint64_t seed,
                           Execution exec = Execution::Parallel, std::uint64_t step_cap = kStepCap);

} // namespace kemeny
