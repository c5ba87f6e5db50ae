#include "kemeny/mc_oracle.hpp"

#include "kemeny/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kemeny {

namespace {

constexpr std::uint64_t kCapHit = ~std::uint64_t{0};

std::uint64_t walk(const TransitionSampler& sampler, Index from, Index to, SplitMix64& rng,
                   std::uint64_t step_cap)
{
    Index state = from;
    std::uint64_t steps = 0;
    while (state != to) {
        if (steps == step_cap)
            return kCapHit;
        state = sampler.next(state, uniform01(rng));
        ++steps;
    }
    return steps;
}

McEstimate summarize(const std::vector<std::uint64_t>& counts)
{
    McEstimate est;
    est.samples = counts.size();
    if (counts.empty())
        return est;
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    const double n = static_cast<double>(counts.size());
    est.mean = static_cast<double>(total) / n;
    if (counts.size() < 2)
        return est;
    double ss = 0.0;
    for (const auto c : counts) {
        const double d = static_cast<double>(c) - est.mean;
        ss += d * d;
    }
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
    est.variance_defined = true;
    return est;
}

// Fills counts[i] = trajectory(i) and returns whether any hit the cap.
template <typename Trajectory>
bool run_trajectories(std::vector<std::uint64_t>& counts, Execution exec, Trajectory trajectory)
{
    const auto total = static_cast<std::int64_t>(counts.size());
    bool capped = false;
    if (exec == Execution::Serial) {
        for (std::int64_t i = 0; i < total; ++i) {
            counts[i] = trajectory(static_cast<std::uint64_t>(i));
            capped = capped || counts[i] == kCapHit;
        }
        return capped;
    }
#pragma omp parallel for schedule(dynamic, 1024) reduction(|| : capped)
    for (std::int64_t i = 0; i < total; ++i) {
        counts[i] = trajectory(static_cast<std::uint64_t>(i));
        capped = capped || counts[i] == kCapHit;
    }
    return capped;
}

void check_samples(std::size_t samples)
{
    if (samples < 1)
        throw Error(ErrorKind::InconsistentInputs, "at least one sample is required");
}

} // namespace

TransitionSampler::TransitionSampler(const Matrix& P)
    : n_(P.cols()),
      cumulative_(static_cast<std::size_t>(P.rows() * P.cols())),
      last_positive_(static_cast<std::size_t>(P.rows()), 0)
{
    for (Index x = 0; x < P.rows(); ++x) {
        double acc = 0.0;
        for (Index y = 0; y < n_; ++y) {
            acc += P(x, y);
            cumulative_[x * n_ + y] = acc;
            if (P(x, y) > 0.0)
                last_positive_[x] = y;
        }
    }
}

Index TransitionSampler::next(Index from, double u) const
{
    const auto begin = cumulative_.begin() + from * n_;
    const auto end = begin + n_;
    const auto it = std::upper_bound(begin, end, u);
    const Index y = static_cast<Index>(it - begin);
    // u can exceed the rounded final cumulative value by a few ulps.
    return std::min(y, last_positive_[from]);
}

McEstimate sample_hitting_time(const MarkovChain& chain, Index from, Index to, std::size_t samples,
                               std::uint64_t seed, Execution exec, std::uint64_t step_cap)
{
    const Index n = chain.size();
    if (from < 0 || from >= n || to < 0 || to >= n)
        throw Error(ErrorKind::UnknownState, "state index out of range");
    if (from == to)
        throw Error(ErrorKind::InconsistentInputs, "hitting-time sampling needs distinct states");
    check_samples(samples);

    const TransitionSampler sampler(chain.P());
    std::vector<std::uint64_t> counts(samples);
    const bool capped = run_trajectories(counts, exec, [&](std::uint64_t i) {
        SplitMix64 rng(substream_seed(seed, i));
        return walk(sampler, from, to, rng, step_cap);
    });
    if (capped)
        throw Error(ErrorKind::CapExceeded,
                    "a trajectory ran " + std::to_string(step_cap) + " steps without reaching the target");
    return summarize(counts);
}

McEstimate estimate_kemeny(const MarkovChain& chain, const StationaryDistribution& pi, std::size_t samples,
                           std::uint64_t seed, Execution exec, std::uint64_t step_cap)
{
    const Index n = chain.size();
    if (pi.size() != n)
        throw Error(ErrorKind::InconsistentInputs, "distribution and chain sizes differ");
    check_samples(samples);

    Matrix target_row(1, n);
    target_row.row(0) = pi.values().transpose() / pi.values().sum();
    const TransitionSampler targets(target_row);
    const TransitionSampler sampler(chain.P());

    std::vector<std::uint64_t> counts(samples);
    const bool capped = run_trajectories(counts, exec, [&](std::uint64_t i) {
        SplitMix64 rng(substream_seed(seed, i));
        const Index target = targets.next(0, uniform01(rng));
        return walk(sampler, 0, target, rng, step_cap);
    });
    if (capped)
        throw Error(ErrorKind::CapExceeded,
                    "a trajectory ran " + std::to_string(step_cap) + " steps without reaching the target");
    return summarize(counts);
}

} // namespace kemeny
