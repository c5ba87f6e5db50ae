#pragma once

#include "kemeny/markov_core.hpp"

namespace kemeny {

/// L_xx = pi(x), L_xy = -pi(x) P_xy. Symmetric positive semidefinite with
/// kernel spanned by the all-ones vector for an admissible chain.
class LaplacianMatrix {
public:
    Index size() const noexcept { return L_.rows(); }
    const Matrix& matrix() const noexcept { return L_; }
    double operator()(Index x, Index y) const { return L_(x, y); }

private:
    explicit LaplacianMatrix(Matrix L) : L_(std::move(L)) {}
    friend LaplacianMatrix laplacian(const MarkovChain&, const StationaryDistribution&, double);
    Matrix L_;
};

/// Throws NotReversible when pi(x)P_xy and pi(y)P_yx differ by more than
/// tol_solve. The off-diagonal part is symmetrized and the diagonal is set
/// to minus the off-diagonal row sum, so rows sum to zero.
LaplacianMatrix laplacian(const MarkovChain& chain, const StationaryDistribution& pi,
                          double tol_solve = kTolSolve);

/// Moore-Penrose pseudoinverse of L from its symmetric eigendecomposition.
/// Eigenvalues below n * eps * lambda_max count as zero; exactly one is
/// expected, otherwise RankDeficient.
Matrix pseudoinverse(const LaplacianMatrix& L);

/// Largest deviation among the four Moore-Penrose identities.
double moore_penrose_residual(const Matrix& A, const Matrix& A_dagger);

/// V = Lambda^{1/2} U^T over the n-1 nonzero eigenpairs of L^+, so that
/// V^T V = L^+ and V 1 = 0. Rows follow descending eigenvalue; each
/// eigenvector is signed so its first nonzero entry is positive.
Matrix gram_factor(const Matrix& L_dagger);

/// Simplex vertices v_x are the columns of V; squared edge lengths are the
/// commute times.
struct EmbeddingBundle {
    Matrix L_dagger;
    Matrix V;
    Vector eigenvalues; ///< eigenvalues of L^+ kept in V, descending
    Index rank = 0;
};

EmbeddingBundle embed(const LaplacianMatrix& L);

/// c_xy = L+_xx + L+_yy - 2 L+_xy
CommuteTimeMatrix commute_via_pinv(const Matrix& L_dagger);

/// Squared Euclidean distances between the columns of V.
Matrix vertex_squared_distances(const Matrix& V);

} // namespace kemeny
