#pragma once

#include "dicke/model.hpp"

#include <vector>

namespace dicke {

/// Leading-principal-minor sequence of (nu*I - M) evaluated at a probe nu,
/// taken from the high-m end of the sector block so that p_1 = nu - f at the
/// top Dicke index. Values are rescaled on the fly to avoid overflow; only
/// relative signs are meaningful beyond small dimensions.
struct CharPolySequence {
    std::vector<double> values;  // p_0 .. p_d, rescaled
    int sign_agreements = 0;     // consecutive sign agreements = #eigenvalues < nu
};

CharPolySequence charpoly_eval(const SectorMatrix& matrix, double nu);

/// Number of eigenvalues strictly below nu (LDL^T pivot count form).
int sturm_count(const SectorMatrix& matrix, double nu);

/// All eigenvalues by Sturm bisection, sorted ascending; each bracketed to
/// width <= tol * max(1, spectral bound).
std::vector<double> eigenvalues_bisect(const SectorMatrix& matrix, double tol = 1e-12);

/// Unit eigenvector for a converged eigenvalue, by inverse iteration with a
/// pivoted tridiagonal solve. Sign fixed so the largest-magnitude component
/// is positive.
std::vector<double> eigenvector(const SectorMatrix& matrix, double nu);

/// Reference path: the forward three-term recurrence for the amplitudes.
/// Unstable for clustered spectra; throws std::runtime_error on pivot
/// breakdown. Kept for cross-checks against the inverse-iteration path.
std::vector<double> eigenvector_recurrence(const SectorMatrix& matrix, double nu);

/// Full spectral decomposition of a sector block. vectors is column-major
/// d x d; column k is the orthonormal eigenvector of eigenvalues[k].
struct Eigensystem {
    int s = 0;
    std::vector<double> eigenvalues;
    std::vector<double> vectors;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    const double* column(int k) const { return vectors.data() + static_cast<std::size_t>(k) * dim(); }
};

/// Diagonalizes by Sturm bisection plus inverse iteration. An exactly zero
/// off-diagonal splits the matrix into independent blocks solved separately;
/// sorting ties are broken by block order. Deterministic.
Eigensystem diagonalize(const SectorMatrix& matrix, double tol = 1e-12);

}  // namespace dicke
