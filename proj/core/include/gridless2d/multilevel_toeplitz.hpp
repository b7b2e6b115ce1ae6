#ifndef GRIDLESS2D_MULTILEVEL_TOEPLITZ_HPP
#define GRIDLESS2D_MULTILEVEL_TOEPLITZ_HPP

#include <gridless2d/signal_model.hpp>
#include <gridless2d/types.hpp>

namespace gridless2d
{

///
/// Generating coefficients u(p, q) of a 2-level Toeplitz matrix, with
/// p in [-(N-1), N-1] and q in [-(M-1), M-1].
///
/// The coefficients always satisfy u(-p, -q) = conj(u(p, q)), so the
/// assembled NM x NM matrix is Hermitian. Element (n*M + m, n'*M + m') of
/// that matrix is u(n - n', m - m').
///
class ToeplitzCoeffs
{
public:
    ToeplitzCoeffs() = default;

    /// All-zero coefficients.
    explicit ToeplitzCoeffs(SceneDims dims);

    ///
    /// Wrap a (2N-1) x (2M-1) array whose entry (p + N - 1, q + M - 1) holds
    /// u(p, q). Throws ContractError if the Hermitian generating symmetry is
    /// violated by more than `tol` (relative to the largest entry).
    ///
    static ToeplitzCoeffs from_array(SceneDims dims, CMatrix values, double tol = 1e-12);

    ///
    /// Same as from_array, but replaces the array by its nearest symmetric
    /// version, (u(p,q) + conj(u(-p,-q))) / 2, instead of checking.
    ///
    static ToeplitzCoeffs symmetrized(SceneDims dims, CMatrix values);

    SceneDims dims() const noexcept { return m_dims; }

    cplx operator()(int p, int q) const { return m_values(p + m_dims.N - 1, q + m_dims.M - 1); }

    /// Set u(p, q) = v and u(-p, -q) = conj(v). For (0, 0) only Re(v) is kept.
    void set(int p, int q, cplx v);

    const CMatrix& values() const noexcept { return m_values; }

    double norm() const { return m_values.norm(); }

private:
    SceneDims m_dims;
    CMatrix m_values;
};

///
/// |D(p, q)|: the number of matrix positions carrying u(p, q), which is
/// (N - |p|)(M - |q|).
///
class DiagonalClassTable
{
public:
    explicit DiagonalClassTable(SceneDims dims);

    int count(int p, int q) const { return m_counts(p + m_dims.N - 1, q + m_dims.M - 1); }

    /// Counts laid out like ToeplitzCoeffs::values().
    const Eigen::MatrixXi& counts() const noexcept { return m_counts; }

private:
    SceneDims m_dims;
    Eigen::MatrixXi m_counts;
};

/// Dense NM x NM Hermitian matrix generated by u.
CMatrix assemble(const ToeplitzCoeffs& u);

/// u(p, q) = sum_k sigma_k exp(j 2 pi (fx_k p + fy_k q)); amplitudes must be
/// real and nonnegative.
ToeplitzCoeffs coeffs_from_scene(const ScattererSet& scene, SceneDims dims);

///
/// Adjoint of assemble: G(p, q) is the sum of A over all positions with
/// first-level offset p and second-level offset q. Returned in the
/// (2N-1) x (2M-1) coefficient layout.
///
CMatrix adjoint(const CMatrix& A, SceneDims dims);

/// Least-squares projection of a Hermitian matrix onto the 2LT subspace.
ToeplitzCoeffs project_to_2lt(const CMatrix& A, SceneDims dims);

/// tr(W * assemble(u)) for Hermitian W, without forming the product.
double trace_weighted(const ToeplitzCoeffs& u, const CMatrix& W);

/// Sum over all (p, q) of conj(G(p, q)) * u(p, q), real part.
double coeff_inner(const CMatrix& G, const ToeplitzCoeffs& u);

} // namespace gridless2d

#endif
