#include "fixtures.hpp"

#include "kemeny/kemeny.hpp"
#include "kemeny/random_chain.hpp"

#include <doctest.h>

using namespace kemeny;

namespace {

struct Routes {
    StationaryDistribution pi;
    HittingTimeMatrix H;
    CommuteTimeMatrix C;
};

Routes routes(const MarkovChain& chain)
{
    auto pi = stationary_distribution(chain);
    auto Ld = pseudoinverse(laplacian(chain, pi));
    auto H = hitting_times(chain, pi, Ld);
    auto C = commute_times(H);
    return Routes{std::move(pi), std::move(H), std::move(C)};
}

} // namespace

TEST_CASE("per-state Kemeny values")
{
    const auto a = routes(fixtures::chain_a());
    const Vector Ka = kemeny_per_state(a.H, a.pi);
    CHECK((Ka.array() - 1.35).abs().maxCoeff() < 1e-12);

    const auto b = routes(fixtures::chain_b());
    CHECK((kemeny_per_state(b.H, b.pi).array() - 4.0 / 3).abs().maxCoeff() < 1e-12);

    const auto w = routes(fixtures::chain_w());
    CHECK((kemeny_per_state(w.H, w.pi).array() - fixtures::chain_w_exact::K).abs().maxCoeff() < 1e-12);

    const auto pi4 = StationaryDistribution::from_values(Vector::Constant(4, 0.25));
    CHECK_THROWS_AS(kemeny_per_state(a.H, pi4), Error);
}

TEST_CASE("Kemeny from commute times")
{
    const auto a = routes(fixtures::chain_a());
    CHECK(std::abs(kemeny_commute(a.C, a.pi) - 1.35) < 1e-12);
    const auto b = routes(fixtures::chain_b());
    CHECK(std::abs(kemeny_commute(b.C, b.pi) - 4.0 / 3) < 1e-12);
    CHECK(kemeny_commute(CommuteTimeMatrix::from_matrix(Matrix::Zero(3, 3)), a.pi) == 0.0);
}

TEST_CASE("Kemeny from the circumcenter and the Lemoine point")
{
    const auto a = routes(fixtures::chain_a());
    const auto circ = circumcenter(a.C);
    const auto ell = lemoine(a.pi);
    CHECK(std::abs(kemeny_geometric(circ, ell, a.C) - 1.35) < 1e-12);
    CHECK(std::abs(circ.R_squared - squared_distance_qf(a.C, circ.gamma_hat, ell.ell_hat) - 1.35) < 1e-12);

    const auto b = routes(fixtures::chain_b());
    CHECK(std::abs(kemeny_geometric(circumcenter(b.C), lemoine(b.pi), b.C) - 4.0 / 3) < 1e-12);

    const auto w = routes(fixtures::chain_w());
    const auto cw = circumcenter(w.C);
    CHECK(std::abs(squared_distance_qf(w.C, cw.gamma_hat, lemoine(w.pi).ell_hat) - fixtures::chain_w_exact::dist_squared) <
          1e-12);
    CHECK(std::abs(kemeny_geometric(cw, lemoine(w.pi), w.C) - fixtures::chain_w_exact::K) < 1e-12);

    // Circumcenter from a different chain.
    CHECK_THROWS_AS(kemeny_geometric(circumcenter(b.C), ell, a.C), Error);
    CHECK_THROWS_AS(kemeny_geometric(circumcenter(w.C), ell, a.C), Error);
}

TEST_CASE("Kemeny from the spectrum")
{
    const auto a = fixtures::chain_a();
    const auto pi = stationary_distribution(a);
    const Vector lambda = transition_spectrum(a, pi);
    CHECK(std::abs(lambda(0) - 1.0) < 1e-10);
    CHECK(std::abs(lambda(1) + 1.0 / 3) < 1e-10);
    CHECK(std::abs(lambda(2) + 2.0 / 3) < 1e-10);
    CHECK(std::abs(kemeny_spectral(a, pi) - 27.0 / 20) < 1e-12);

    const auto b = fixtures::chain_b();
    const Vector lb = transition_spectrum(b, stationary_distribution(b));
    CHECK(std::abs(lb(1) + 0.5) < 1e-12);
    CHECK(std::abs(lb(2) + 0.5) < 1e-12);
    CHECK(std::abs(kemeny_spectral(b, stationary_distribution(b)) - 4.0 / 3) < 1e-12);

    const auto nr = random_nonreversible_chain(5, 2);
    try {
        kemeny_spectral(nr, stationary_distribution(nr));
        FAIL("expected SpectralFailure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpectralFailure);
    }
}

TEST_CASE("full report of the three-state example")
{
    const auto r = full_report(fixtures::chain_a());
    CHECK(r.admissibility.all());
    CHECK(std::abs(r.kemeny.commute - 1.35) < 1e-9);
    CHECK(std::abs(r.kemeny.geometric - 1.35) < 1e-9);
    CHECK(std::abs(r.kemeny.spectral - 1.35) < 1e-9);
    CHECK(r.kemeny.spread < kTolCross);
    CHECK(r.kemeny.agreement < kTolCross);
    CHECK(std::abs(r.geometry.R - 1.1859) < 5e-5);
    CHECK(std::abs(r.geometry.center_distance - 0.2372) < 5e-5);
    CHECK(r.geometry.circumcenter_inside);
}

TEST_CASE("full report rejects inadmissible chains by name")
{
    auto condition = [](const MarkovChain& chain) -> std::string {
        try {
            full_report(chain);
        } catch (const InadmissibleError& e) {
            return e.condition();
        }
        return "accepted";
    };

    Matrix path(3, 3);
    path << 0, 1, 0, 0.5, 0, 0.5, 0, 1, 0;
    CHECK(condition(build_chain(default_labels(3), path)) == "aperiodic");

    Matrix blocks = Matrix::Zero(4, 4);
    blocks(0, 1) = blocks(1, 0) = blocks(2, 3) = blocks(3, 2) = 1.0;
    CHECK(condition(build_chain(default_labels(4), blocks)) == "irreducible");

    CHECK(condition(random_nonreversible_chain(6, 8)) == "reversible");
}

TEST_CASE("four routes agree on random chains")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Index n = 3 + static_cast<Index>(seed % 28);
        const auto r = full_report(random_admissible_chain(n, seed));
        CHECK(r.kemeny.spread < kTolCross);
        CHECK(r.kemeny.agreement < kTolCross);
        CHECK(r.kemeny.per_state.minCoeff() > 0.0);
        CHECK(r.kemeny.geometric > 0.0);
        CHECK(r.kemeny.spectral > 0.0);
        CHECK(r.geometry.R_squared >= r.kemeny.commute - kTolCross);
    }
}

TEST_CASE("random admissible generator")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Index n = 3 + static_cast<Index>(seed % 10);
        const Matrix W = random_admissible_weights(n, seed);
        CHECK((W - W.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((W.diagonal().array() == 0.0).all());
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (W(i, j) > 0.0) {
                    CHECK(W(i, j) >= 0.1);
                    CHECK(W(i, j) <= 10.0);
                }
        const auto chain = random_admissible_chain(n, seed);
        const auto verdict = check_admissible(chain, stationary_distribution(chain));
        CHECK(verdict.all());
        // Stationary distribution is the normalized weighted degree.
        const Vector deg = W.rowwise().sum();
        CHECK((stationary_distribution(chain).values() - deg / deg.sum()).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(random_admissible_weights(12, 5) == random_admissible_weights(12, 5));
}
