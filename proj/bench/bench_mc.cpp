// Serial vs OpenMP Monte Carlo Kemeny estimate on random admissible chains.

#include "kemeny/mc_oracle.hpp"
#include "kemeny/random_chain.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    const std::size_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1'000'000;
    const std::uint64_t seed = 7;
    std::cout << "threads " << omp_get_max_threads() << ", samples " << samples << "\n";

    for (const kemeny::Index n : {5, 15, 30}) {
        const auto chain = kemeny::random_admissible_chain(n, 1000 + static_cast<std::uint64_t>(n));
        const auto pi = kemeny::stationary_distribution(chain);

        auto t0 = std::chrono::steady_clock::now();
        const auto serial = kemeny::estimate_kemeny(chain, pi, samples, seed, kemeny::Execution::Serial);
        auto t1 = std::chrono::steady_clock::now();
        const auto parallel = kemeny::estimate_kemeny(chain, pi, samples, seed, kemeny::Execution::Parallel);
        auto t2 = std::chrono::steady_clock::now();

        const auto ms = [](auto a, auto b) { return std::chrono::duration<double, std::milli>(b - a).count(); };
        const bool same = serial.mean == parallel.mean && serial.std_error == parallel.std_error;
        std::cout << "n=" << n << "  serial " << ms(t0, t1) << " ms  parallel " << ms(t1, t2)
                  << " ms  speedup " << ms(t0, t1) / ms(t1, t2) << "  K~" << parallel.mean
                  << (same ? "  identical" : "  MISMATCH") << "\n";
        if (!same)
            return 1;
    }
    return 0;
}
