#include "kemeny/laplacian_embedding.hpp"

#include <cmath>
#include <limits>

namespace kemeny {

namespace {

struct SplitSpectrum {
    Matrix vectors; // kept eigenvectors, one per column, descending eigenvalue
    Vector values;  // kept eigenvalues, descending
};

// Symmetric eigendecomposition keeping everything above the relative rank
// cutoff. Throws RankDeficient unless exactly one eigenvalue is dropped.
SplitSpectrum nonzero_spectrum(const Matrix& A, const char* what)
{
    const Index n = A.rows();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(A);
    if (eig.info() != Eigen::Success)
        throw Error(ErrorKind::RankDeficient, std::string("eigendecomposition of ") + what + " failed");

    const Vector& values = eig.eigenvalues(); // ascending
    const double lambda_max = std::max(values.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    const double cutoff = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * lambda_max;

    Index dropped = 0;
    for (Index i = 0; i < n; ++i)
        if (std::abs(values(i)) <= cutoff)
            ++dropped;
    if (dropped != 1)
        throw Error(ErrorKind::RankDeficient,
                    std::string(what) + " has " + std::to_string(dropped) +
                        " eigenvalues below the rank cutoff, expected 1");

    SplitSpectrum out{Matrix(n, n - 1), Vector(n - 1)};
    Index k = 0;
    for (Index i = n - 1; i >= 0; --i) {
        if (std::abs(values(i)) <= cutoff)
            continue;
        if (values(i) < 0.0)
            throw Error(ErrorKind::RankDeficient, std::string(what) + " is not positive semidefinite");
        out.values(k) = values(i);
        out.vectors.col(k) = eig.eigenvectors().col(i);
        ++k;
    }
    return out;
}

} // namespace

LaplacianMatrix laplacian(const MarkovChain& chain, const StationaryDistribution& pi, double tol_solve)
{
    const Index n = chain.size();
    if (pi.size() != n)
        throw Error(ErrorKind::InconsistentInputs, "distribution and chain sizes differ");

    Matrix flow = pi.values().asDiagonal() * chain.P();
    const double asymmetry = (flow - flow.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry >= tol_solve)
        throw Error(ErrorKind::NotReversible,
                    "detailed balance violated by " + std::to_string(asymmetry));

    Matrix L = -0.5 * (flow + flow.transpose());
    for (Index x = 0; x < n; ++x) {
        L(x, x) = 0.0;
        L(x, x) = -L.row(x).sum();
    }
    return LaplacianMatrix(std::move(L));
}

Matrix pseudoinverse(const LaplacianMatrix& L)
{
    const auto spectrum = nonzero_spectrum(L.matrix(), "Laplacian");
    const Matrix& U = spectrum.vectors;
    Matrix Ld = U * spectrum.values.cwiseInverse().asDiagonal() * U.transpose();
    // Project onto span(1)^perp on both sides; exact for the true L^+.
    Ld.rowwise() -= Ld.colwise().mean();
    Ld.colwise() -= Ld.rowwise().mean();
    return 0.5 * (Ld + Ld.transpose());
}

double moore_penrose_residual(const Matrix& A, const Matrix& A_dagger)
{
    const Matrix AAd = A * A_dagger;
    const Matrix AdA = A_dagger * A;
    double worst = (A_dagger * A * A_dagger - A_dagger).cwiseAbs().maxCoeff();
    worst = std::max(worst, (A * A_dagger * A - A).cwiseAbs().maxCoeff());
    worst = std::max(worst, (AAd - AAd.transpose()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (AdA - AdA.transpose()).cwiseAbs().maxCoeff());
    return worst;
}

Matrix gram_factor(const Matrix& L_dagger)
{
    if (L_dagger.rows() != L_dagger.cols())
        throw Error(ErrorKind::DimensionMismatch, "pseudoinverse must be square");
    auto spectrum = nonzero_spectrum(L_dagger, "pseudoinverse");
    const Index n = L_dagger.rows();

    Matrix V(n - 1, n);
    for (Index k = 0; k < n - 1; ++k) {
        auto u = spectrum.vectors.col(k);
        const double scale = u.cwiseAbs().maxCoeff();
        for (Index i = 0; i < n; ++i) {
            if (std::abs(u(i)) > 1e-12 * scale) {
                if (u(i) < 0.0)
                    u = -u;
                break;
            }
        }
        V.row(k) = std::sqrt(spectrum.values(k)) * u.transpose();
    }
    V.colwise() -= V.rowwise().mean();
    return V;
}

EmbeddingBundle embed(const LaplacianMatrix& L)
{
    EmbeddingBundle bundle;
    bundle.L_dagger = pseudoinverse(L);
    bundle.V = gram_factor(bundle.L_dagger);
    bundle.eigenvalues = bundle.V.rowwise().squaredNorm();
    bundle.rank = bundle.V.rows();
    return bundle;
}

CommuteTimeMatrix commute_via_pinv(const Matrix& L_dagger)
{
    const Index n = L_dagger.rows();
    if (L_dagger.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "pseudoinverse must be square");
    Matrix C(n, n);
    for (Index x = 0; x < n; ++x) {
        C(x, x) = 0.0;
        for (Index y = x + 1; y < n; ++y) {
            const double c = L_dagger(x, x) + L_dagger(y, y) - 2.0 * L_dagger(x, y);
            C(x, y) = c;
            C(y, x) = c;
        }
    }
    return CommuteTimeMatrix(std::move(C));
}

Matrix vertex_squared_distances(const Matrix& V)
{
    const Index n = V.cols();
    Matrix D(n, n);
    for (Index x = 0; x < n; ++x) {
        D(x, x) = 0.0;
        for (Index y = x + 1; y < n; ++y) {
            const double d = (V.col(x) - V.col(y)).squaredNorm();
            D(x, y) = d;
            D(y, x) = d;
        }
    }
    return D;
}

} // namespace kemeny
