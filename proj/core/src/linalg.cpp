#include <gridless2d/linalg.hpp>

#include <complex>
#include <limits>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace gridless2d
{

namespace
{

void require_square(const CMatrix& A)
{
    if (A.rows() != A.cols())
    {
        throw DimensionError("expected a square matrix");
    }
}

} // namespace

HermitianEig hermitian_eig(const CMatrix& A)
{
    require_square(A);
    const auto n = static_cast<lapack_int>(A.rows());
    HermitianEig out{RVector(n), A};
    if (n == 0)
        return out;
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n, out.values.data());
    if (info != 0)
    {
        throw std::runtime_error("zheevd failed with info " + std::to_string(info));
    }
    return out;
}

HermitianEig hermitian_eig_above(const CMatrix& A, double lower)
{
    require_square(A);
    const auto n = static_cast<lapack_int>(A.rows());
    if (n == 0)
        return {RVector(0), CMatrix(0, 0)};
    CMatrix work = A;
    RVector w(n);
    CMatrix Z(n, n);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'V', 'L', n, work.data(), n, lower,
                                           std::numeric_limits<double>::max(), 0, 0, 0.0, &found,
                                           w.data(), Z.data(), n, support.data());
    if (info != 0)
    {
        throw std::runtime_error("zheevr failed with info " + std::to_string(info));
    }
    return {w.head(found), Z.leftCols(found)};
}

CMatrix psd_projection(const CMatrix& A, int& positive_count)
{
    const auto n = static_cast<int>(A.rows());
    if (2 * positive_count <= n)
    {
        const HermitianEig eig = hermitian_eig_above(A, 0.0);
        positive_count         = static_cast<int>(eig.values.size());
        const auto& V          = eig.vectors;
        return V * eig.values.asDiagonal() * V.adjoint();
    }
    const HermitianEig neg = hermitian_eig_above(-A, 0.0);
    // zero eigenvalues are counted as positive here; only a hint
    positive_count = n - static_cast<int>(neg.values.size());
    const auto& V  = neg.vectors;
    CMatrix out    = A + V * neg.values.asDiagonal() * V.adjoint();
    return out;
}

CMatrix psd_projection(const CMatrix& A)
{
    const HermitianEig eig = hermitian_eig_above(A, 0.0);
    const auto& V          = eig.vectors;
    return V * eig.values.asDiagonal() * V.adjoint();
}

} // namespace gridless2d
