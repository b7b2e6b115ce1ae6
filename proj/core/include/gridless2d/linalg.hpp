#ifndef GRIDLESS2D_LINALG_HPP
#define GRIDLESS2D_LINALG_HPP

#include <gridless2d/types.hpp>

namespace gridless2d
{

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct HermitianEig
{
    RVector values;
    CMatrix vectors;
};

/// Full Hermitian eigendecomposition (LAPACK zheevd, lower triangle read).
HermitianEig hermitian_eig(const CMatrix& A);

/// Eigenpairs with eigenvalue strictly above `lower` (LAPACK zheevr).
HermitianEig hermitian_eig_above(const CMatrix& A, double lower);

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues set to zero.
CMatrix psd_projection(const CMatrix& A);

///
/// psd_projection that computes only one side of the spectrum: the positive
/// part directly, or A plus the positive part of -A, whichever side
/// `positive_count` (the expected number of positive eigenvalues) says is
/// smaller. On return `positive_count` holds the actual count.
///
CMatrix psd_projection(const CMatrix& A, int& positive_count);

/// (A + A^H) / 2
inline CMatrix hermitian_part(const CMatrix& A)
{
    return 0.5 * (A + A.adjoint());
}

} // namespace gridless2d

#endif
