#pragma once

#include "kemeny/laplacian_embedding.hpp"
#include "kemeny/markov_core.hpp"
#include "kemeny/simplex_geometry.hpp"

namespace kemeny {

/// K_x = sum_y pi(y) h_xy for every starting state x.
Vector kemeny_per_state(const HittingTimeMatrix& H, const StationaryDistribution& pi);

/// K = 1/2 sum_{x,y} pi(x) pi(y) c_xy
double kemeny_commute(const CommuteTimeMatrix& C, const StationaryDistribution& pi);

/// K = R^2 - |gamma - ell|^2, with the distance taken through the commute
/// quadratic form.
double kemeny_geometric(const CircumcenterResult& circ, const LemoinePoint& ell,
                        const CommuteTimeMatrix& C);

/// Eigenvalues of P in descending order, computed from the symmetric
/// similar matrix D^{1/2} P D^{-1/2}, D = diag(pi).
Vector transition_spectrum(const MarkovChain& chain, const StationaryDistribution& pi);

/// sum_{i>=2} 1 / (1 - lambda_i). Throws SpectralFailure unless the
/// eigenvalue 1 is simple.
double kemeny_spectral(const MarkovChain& chain, const StationaryDistribution& pi);

struct KemenyReport {
    Vector per_state;
    double commute = 0.0;
    double geometric = 0.0;
    double spectral = 0.0;
    double spread = 0.0;    ///< max_x K_x - min_x K_x
    double agreement = 0.0; ///< max pairwise deviation across all routes
};

struct GeometryReport {
    Vector gamma_hat;
    double R = 0.0;
    double R_squared = 0.0;
    double circumcenter_residual = 0.0;
    Vector ell_hat;
    double lemoine_facet_total = 0.0;
    double center_distance = 0.0;
    double center_distance_squared = 0.0;
    bool circumcenter_inside = false;
};

/// Residuals of every internal identity the pipeline checks.
struct Diagnostics {
    double stationary_residual = 0.0;
    double detailed_balance = 0.0;
    double moore_penrose = 0.0;
    double gram = 0.0;            ///< max |V^T V - L^+|
    double kernel = 0.0;          ///< max(|L^+ 1|, |V 1|)
    double recursion = 0.0;
    double commute_routes = 0.0;  ///< hitting-time route vs pseudoinverse route
    double embedding = 0.0;       ///< |v_x - v_y|^2 vs c_xy
};

struct FullReport {
    MarkovChain chain;
    Admissibility admissibility;
    StationaryDistribution pi;
    LaplacianMatrix L;
    EmbeddingBundle embedding;
    HittingTimeMatrix H;
    CommuteTimeMatrix C;
    KemenyReport kemeny;
    GeometryReport geometry;
    Diagnostics diagnostics;
    Tolerances tolerances;
};

/// Runs admissibility, then every route, then checks every identity.
/// Throws InadmissibleError naming the failing condition, or
/// NumericalFailure when any residual exceeds its tolerance.
FullReport full_report(const MarkovChain& chain, const Tolerances& tol = {});

} // namespace kemeny
