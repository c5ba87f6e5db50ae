#include "kemeny/kemeny.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kemeny {

namespace {

void require(bool ok, const char* check, double value, double tol)
{
    if (ok)
        return;
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << check << " check failed: " << value << " exceeds tolerance " << tol;
    throw Error(ErrorKind::NumericalFailure, os.str());
}

} // namespace

Vector kemeny_per_state(const HittingTimeMatrix& H, const StationaryDistribution& pi)
{
    if (H.size() != pi.size())
        throw Error(ErrorKind::DimensionMismatch, "hitting-time matrix and distribution sizes differ");
    return H.matrix() * pi.values();
}

double kemeny_commute(const CommuteTimeMatrix& C, const StationaryDistribution& pi)
{
    if (C.size() != pi.size())
        throw Error(ErrorKind::DimensionMismatch, "commute-time matrix and distribution sizes differ");
    return 0.5 * pi.values().dot(C.matrix() * pi.values());
}

double kemeny_geometric(const CircumcenterResult& circ, const LemoinePoint& ell, const CommuteTimeMatrix& C)
{
    const Index n = C.size();
    if (circ.gamma_hat.size() != n || ell.ell_hat.size() != n)
        throw Error(ErrorKind::InconsistentInputs, "circumcenter, Lemoine point and commute times disagree in size");
    const double scale = std::max(1.0, C.matrix().cwiseAbs().maxCoeff());
    const double residual =
        (C.matrix() * circ.gamma_hat.values() - Vector::Constant(n, 2.0 * circ.R_squared)).cwiseAbs().maxCoeff();
    if (residual > 1e-6 * scale)
        throw Error(ErrorKind::InconsistentInputs, "circumcenter was not computed from these commute times");
    return circ.R_squared - squared_distance_qf(C, circ.gamma_hat, ell.ell_hat);
}

Vector transition_spectrum(const MarkovChain& chain, const StationaryDistribution& pi)
{
    const Index n = chain.size();
    if (pi.size() != n)
        throw Error(ErrorKind::InconsistentInputs, "distribution and chain sizes differ");
    const Vector root = pi.values().cwiseSqrt();
    const Matrix S = root.asDiagonal() * chain.P() * root.cwiseInverse().asDiagonal();
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > kTolSolve)
        throw Error(ErrorKind::SpectralFailure, "similarity transform is not symmetric; chain is not reversible");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        throw Error(ErrorKind::SpectralFailure, "symmetric eigensolver did not converge");
    return eig.eigenvalues().reverse();
}

double kemeny_spectral(const MarkovChain& chain, const StationaryDistribution& pi)
{
    const Vector lambda = transition_spectrum(chain, pi);
    if (std::abs(lambda(0) - 1.0) > kTolSolve)
        throw Error(ErrorKind::SpectralFailure, "leading eigenvalue is not 1");
    if (1.0 - lambda(1) <= kTolSolve)
        throw Error(ErrorKind::SpectralFailure, "eigenvalue 1 is not simple");
    double K = 0.0;
    for (Index i = 1; i < lambda.size(); ++i)
        K += 1.0 / (1.0 - lambda(i));
    return K;
}

FullReport full_report(const MarkovChain& chain, const Tolerances& tol)
{
    Admissibility verdict;
    verdict.loop_free = (chain.P().diagonal().array() == 0.0).all();
    verdict.irreducible = support_strongly_connected(chain);
    if (!verdict.irreducible)
        throw InadmissibleError("irreducible", "support graph is not strongly connected");
    verdict.aperiodic = !support_bipartite(chain);
    if (!verdict.aperiodic)
        throw InadmissibleError("aperiodic", "support graph is bipartite, so the chain has period 2");
    if (!verdict.loop_free)
        throw InadmissibleError("loop-free", "transition matrix has a nonzero diagonal");

    auto pi = stationary_distribution(chain);
    Diagnostics diag;
    diag.stationary_residual = stationary_residual(chain, pi);
    diag.detailed_balance = detailed_balance_violation(chain, pi);
    verdict.reversible = diag.detailed_balance < tol.solve;
    if (!verdict.reversible) {
        std::ostringstream os;
        os << "detailed balance violated by " << diag.detailed_balance;
        throw InadmissibleError("reversible", os.str());
    }
    require(diag.stationary_residual < tol.solve, "stationary fixed-point", diag.stationary_residual, tol.solve);

    auto L = laplacian(chain, pi, tol.solve);
    auto embedding = embed(L);
    const Index n = chain.size();
    diag.moore_penrose = moore_penrose_residual(L.matrix(), embedding.L_dagger);
    diag.gram = (embedding.V.transpose() * embedding.V - embedding.L_dagger).cwiseAbs().maxCoeff();
    diag.kernel = std::max((embedding.L_dagger * Vector::Ones(n)).cwiseAbs().maxCoeff(),
                           (embedding.V * Vector::Ones(n)).cwiseAbs().maxCoeff());
    require(diag.moore_penrose < tol.solve, "Moore-Penrose", diag.moore_penrose, tol.solve);
    require(diag.gram < tol.solve, "Gram factor", diag.gram, tol.solve);
    require(diag.kernel < tol.solve, "kernel", diag.kernel, tol.solve);

    auto H = hitting_times(chain, pi, embedding.L_dagger);
    diag.recursion = recursion_residual(chain, H);
    require(diag.recursion < tol.solve, "hitting-time recursion", diag.recursion, tol.solve);

    auto C = commute_times(H);
    const auto C_pinv = commute_via_pinv(embedding.L_dagger);
    diag.commute_routes = (C.matrix() - C_pinv.matrix()).cwiseAbs().maxCoeff();
    diag.embedding = (vertex_squared_distances(embedding.V) - C.matrix()).cwiseAbs().maxCoeff();
    require(diag.commute_routes < tol.cross, "commute-time route agreement", diag.commute_routes, tol.cross);
    require(diag.embedding < tol.cross, "simplex embedding", diag.embedding, tol.cross);

    const auto circ = circumcenter(C);
    const auto ell = lemoine(pi);
    require(circ.residual < tol.solve, "circumcenter", circ.residual, tol.solve);
    require(std::abs(ell.total_squared_facet_distance - 1.0) < tol.cross, "Lemoine facet total",
            std::abs(ell.total_squared_facet_distance - 1.0), tol.cross);

    KemenyReport K;
    K.per_state = kemeny_per_state(H, pi);
    K.commute = kemeny_commute(C, pi);
    K.geometric = kemeny_geometric(circ, ell, C);
    K.spectral = kemeny_spectral(chain, pi);
    K.spread = K.per_state.maxCoeff() - K.per_state.minCoeff();
    const double lo = std::min({K.per_state.minCoeff(), K.commute, K.geometric, K.spectral});
    const double hi = std::max({K.per_state.maxCoeff(), K.commute, K.geometric, K.spectral});
    K.agreement = hi - lo;
    require(K.spread < tol.cross, "Kemeny constancy", K.spread, tol.cross);
    require(K.agreement < tol.cross, "Kemeny route agreement", K.agreement, tol.cross);
    require(lo > 0.0, "Kemeny positivity", lo, 0.0);

    GeometryReport G;
    G.gamma_hat = circ.gamma_hat.values();
    G.R = circ.R;
    G.R_squared = circ.R_squared;
    G.circumcenter_residual = circ.residual;
    G.ell_hat = ell.ell_hat.values();
    G.lemoine_facet_total = ell.total_squared_facet_distance;
    G.center_distance_squared = squared_distance_qf(C, circ.gamma_hat, ell.ell_hat);
    G.center_distance = std::sqrt(G.center_distance_squared);
    G.circumcenter_inside = circ.inside();
    require(G.R_squared >= K.commute - tol.cross, "circumradius bound", K.commute - G.R_squared, tol.cross);

    return FullReport{chain, verdict, std::move(pi), std::move(L), std::move(embedding), std::move(H),
                      std::move(C), std::move(K), std::move(G), diag, tol};
}

} // namespace kemeny
