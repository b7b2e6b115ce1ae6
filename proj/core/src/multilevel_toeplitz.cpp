#include <gridless2d/multilevel_toeplitz.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace gridless2d
{

namespace
{

void check_coeff_shape(SceneDims dims, const CMatrix& values)
{
    if (values.rows() != 2 * dims.N - 1 || values.cols() != 2 * dims.M - 1)
    {
        throw DimensionError("coefficient array must be (2N-1)x(2M-1)");
    }
}

} // namespace

ToeplitzCoeffs::ToeplitzCoeffs(SceneDims dims)
    : m_dims(dims), m_values(CMatrix::Zero(2 * dims.N - 1, 2 * dims.M - 1))
{
    dims.validate();
}

ToeplitzCoeffs ToeplitzCoeffs::from_array(SceneDims dims, CMatrix values, double tol)
{
    dims.validate();
    check_coeff_shape(dims, values);
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    const auto R = values.rows();
    const auto C = values.cols();
    for (Eigen::Index i = 0; i < R; ++i)
    {
        for (Eigen::Index k = 0; k < C; ++k)
        {
            if (std::abs(values(i, k) - std::conj(values(R - 1 - i, C - 1 - k))) > tol * scale)
            {
                throw ContractError("coefficients violate u(-p,-q) = conj(u(p,q))");
            }
        }
    }
    ToeplitzCoeffs u;
    u.m_dims   = dims;
    u.m_values = std::move(values);
    return u;
}

ToeplitzCoeffs ToeplitzCoeffs::symmetrized(SceneDims dims, CMatrix values)
{
    dims.validate();
    check_coeff_shape(dims, values);
    ToeplitzCoeffs u;
    u.m_dims   = dims;
    u.m_values = 0.5 * (values + values.reverse().conjugate());
    return u;
}

void ToeplitzCoeffs::set(int p, int q, cplx v)
{
    const int i = p + m_dims.N - 1;
    const int k = q + m_dims.M - 1;
    if (p == 0 && q == 0)
    {
        v = cplx(v.real(), 0.0);
    }
    m_values(i, k)                                          = v;
    m_values(2 * m_dims.N - 2 - i, 2 * m_dims.M - 2 - k) = std::conj(v);
}

DiagonalClassTable::DiagonalClassTable(SceneDims dims)
    : m_dims(dims), m_counts(2 * dims.N - 1, 2 * dims.M - 1)
{
    for (int p = -(dims.N - 1); p < dims.N; ++p)
        for (int q = -(dims.M - 1); q < dims.M; ++q)
            m_counts(p + dims.N - 1, q + dims.M - 1) = (dims.N - std::abs(p)) * (dims.M - std::abs(q));
}

CMatrix assemble(const ToeplitzCoeffs& u)
{
    const SceneDims d = u.dims();
    const int NM      = d.size();
    CMatrix T(NM, NM);
    for (int n = 0; n < d.N; ++n)
    {
        for (int np = 0; np < d.N; ++np)
        {
            auto block = T.block(n * d.M, np * d.M, d.M, d.M);
            for (int m = 0; m < d.M; ++m)
                for (int mp = 0; mp < d.M; ++mp)
                    block(m, mp) = u(n - np, m - mp);
        }
    }
    return T;
}

ToeplitzCoeffs coeffs_from_scene(const ScattererSet& scene, SceneDims dims)
{
    ToeplitzCoeffs u(dims);
    CMatrix values = CMatrix::Zero(2 * dims.N - 1, 2 * dims.M - 1);
    for (const auto& s : scene)
    {
        if (s.amp.imag() != 0.0 || s.amp.real() < 0.0)
        {
            throw ContractError("coeffs_from_scene requires real nonnegative powers");
        }
        // offsets start at -(N-1), so shift the atoms by that phase
        const CVector ax = atom_1d(s.fx, 2 * dims.N - 1) * std::polar(1.0, -2.0 * std::numbers::pi * wrap01(s.fx) * (dims.N - 1));
        const CVector ay = atom_1d(s.fy, 2 * dims.M - 1) * std::polar(1.0, -2.0 * std::numbers::pi * wrap01(s.fy) * (dims.M - 1));
        values.noalias() += s.amp.real() * ax * ay.transpose();
    }
    return ToeplitzCoeffs::symmetrized(dims, std::move(values));
}

CMatrix adjoint(const CMatrix& A, SceneDims dims)
{
    const int NM = dims.size();
    if (A.rows() != NM || A.cols() != NM)
    {
        throw DimensionError("adjoint expects an NM x NM matrix");
    }
    CMatrix G = CMatrix::Zero(2 * dims.N - 1, 2 * dims.M - 1);
    for (int n = 0; n < dims.N; ++n)
    {
        for (int np = 0; np < dims.N; ++np)
        {
            const int p  = n - np + dims.N - 1;
            const auto B = A.block(n * dims.M, np * dims.M, dims.M, dims.M);
            for (int mp = 0; mp < dims.M; ++mp)
                for (int m = 0; m < dims.M; ++m)
                    G(p, m - mp + dims.M - 1) += B(m, mp);
        }
    }
    return G;
}

ToeplitzCoeffs project_to_2lt(const CMatrix& A, SceneDims dims)
{
    const DiagonalClassTable table(dims);
    CMatrix G = adjoint(A, dims);
    G.array() /= table.counts().cast<double>().array().cast<cplx>();
    return ToeplitzCoeffs::symmetrized(dims, std::move(G));
}

double coeff_inner(const CMatrix& G, const ToeplitzCoeffs& u)
{
    if (G.rows() != u.values().rows() || G.cols() != u.values().cols())
    {
        throw DimensionError("coefficient arrays differ in shape");
    }
    return (G.conjugate().array() * u.values().array()).sum().real();
}

double trace_weighted(const ToeplitzCoeffs& u, const CMatrix& W)
{
    const SceneDims d = u.dims();
    if (W.rows() != d.size() || W.cols() != d.size())
    {
        throw DimensionError("weight matrix must be NM x NM");
    }
    const double wscale = std::max(1.0, W.cwiseAbs().maxCoeff());
    if ((W - W.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * wscale)
    {
        throw ContractError("trace_weighted requires a Hermitian weight");
    }
    const CMatrix G = adjoint(W, d);
    const cplx tr   = (G.conjugate().array() * u.values().array()).sum();
    return tr.real();
}

} // namespace gridless2d
