#include <gridless2d/vandermonde_mapp.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <gridless2d/linalg.hpp>

namespace gridless2d
{

namespace
{

double cycles_of(cplx z)
{
    return wrap01(std::arg(z) / (2.0 * std::numbers::pi));
}

double cyclic_distance(double a, double b)
{
    const double d = wrap01(a - b);
    return std::min(d, 1.0 - d);
}

/// Rows of U_s whose level index (first level when `first`, second otherwise)
/// lies in [lo, lo + count).
CMatrix select_rows(const CMatrix& U, SceneDims dims, bool first, int shift)
{
    const int rows = first ? (dims.N - 1) * dims.M : dims.N * (dims.M - 1);
    CMatrix out(rows, U.cols());
    int r = 0;
    for (int n = 0; n < dims.N; ++n)
    {
        for (int m = 0; m < dims.M; ++m)
        {
            const bool keep = first ? (n - shift >= 0 && n - shift < dims.N - 1)
                                    : (m - shift >= 0 && m - shift < dims.M - 1);
            if (keep)
                out.row(r++) = U.row(dims.index(n, m));
        }
    }
    return out;
}

/// Least-squares solution of A X = B with the condition number of A.
CMatrix pencil_solve(const CMatrix& A, const CMatrix& B, double& cond)
{
    Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    cond = sv.size() == 0 ? 0.0
                          : (sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1]
                                                     : std::numeric_limits<double>::infinity());
    return svd.solve(B);
}

/// Connected components of the relation "cyclic distance < tol".
std::vector<std::vector<int>> cluster_frequencies(const std::vector<double>& f, double tol)
{
    const int K = static_cast<int>(f.size());
    std::vector<int> parent(static_cast<std::size_t>(K));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < K; ++i)
        for (int j = i + 1; j < K; ++j)
            if (cyclic_distance(f[i], f[j]) < tol)
                parent[find(i)] = find(j);

    std::vector<std::vector<int>> groups;
    std::vector<int> slot(static_cast<std::size_t>(K), -1);
    for (int i = 0; i < K; ++i)
    {
        const int root = find(i);
        if (slot[root] < 0)
        {
            slot[root] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[slot[root]].push_back(i);
    }
    return groups;
}

} // namespace

int estimate_rank(const CMatrix& T, double rel_tol)
{
    if (T.size() == 0)
        return 0;
    const RVector ev    = hermitian_eig(hermitian_part(T)).values;
    const double lmax   = ev.maxCoeff();
    if (!(lmax > 0.0))
        return 0;
    return static_cast<int>((ev.array() > rel_tol * lmax).count());
}

DecompositionResult mapp_decompose(const ToeplitzCoeffs& u, int K, const MappOptions& opts)
{
    const SceneDims dims = u.dims();
    if (K < 0)
        throw ContractError("rank must be nonnegative");
    const int budget = std::min((dims.N - 1) * dims.M, dims.N * (dims.M - 1));
    if (K > budget)
    {
        throw ContractError("rank " + std::to_string(K) + " exceeds the pencil row budget " +
                            std::to_string(budget));
    }

    const CMatrix T = assemble(u);
    DecompositionResult out;
    if (K == 0)
    {
        out.residual = 0.0;
        return out;
    }

    // signal subspace scaled by sqrt of the eigenvalues
    const HermitianEig eig = hermitian_eig(T);
    const int NM           = dims.size();
    CMatrix Us             = eig.vectors.rightCols(K);
    for (int k = 0; k < K; ++k)
        Us.col(k) *= std::sqrt(std::max(eig.values[NM - K + k], 0.0));

    double cond_x = 0.0;
    double cond_y = 0.0;
    const CMatrix Psi =
        pencil_solve(select_rows(Us, dims, true, 0), select_rows(Us, dims, true, 1), cond_x);
    const CMatrix PsiY =
        pencil_solve(select_rows(Us, dims, false, 0), select_rows(Us, dims, false, 1), cond_y);
    out.pencil_condition = std::max(cond_x, cond_y);
    out.ill_conditioned  = !(out.pencil_condition <= opts.cond_limit);

    Eigen::ComplexEigenSolver<CMatrix> ces(Psi);
    const CMatrix E      = ces.eigenvectors();
    const CVector phi    = ces.eigenvalues();
    const CMatrix Einv   = E.inverse();
    const CMatrix Gamma  = Einv * PsiY * E;

    std::vector<double> fx(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        fx[k] = cycles_of(phi[k]);

    out.freqs.resize(static_cast<std::size_t>(K));
    for (const auto& group : cluster_frequencies(fx, opts.cluster_tol))
    {
        if (group.size() == 1)
        {
            const int k  = group.front();
            out.freqs[k] = {fx[k], cycles_of(Gamma(k, k))};
            continue;
        }
        const auto c = static_cast<Eigen::Index>(group.size());
        CMatrix block(c, c);
        CVector phiBlock(c);
        for (Eigen::Index i = 0; i < c; ++i)
        {
            phiBlock[i] = phi[group[i]];
            for (Eigen::Index j = 0; j < c; ++j)
                block(i, j) = Gamma(group[i], group[j]);
        }
        Eigen::ComplexEigenSolver<CMatrix> sub(block);
        const CMatrix F    = sub.eigenvectors();
        const CMatrix Finv = F.inverse();
        // first-level value of each split member; equals the common
        // eigenvalue when the cluster is an exact repeat
        const CMatrix phiRot = Finv * phiBlock.asDiagonal() * F;
        for (Eigen::Index i = 0; i < c; ++i)
            out.freqs[group[i]] = {cycles_of(phiRot(i, i)), cycles_of(sub.eigenvalues()[i])};
    }

    // powers: least squares of T on the rank-one atoms, negatives clamped
    CMatrix V(NM, K);
    for (int k = 0; k < K; ++k)
        V.col(k) = atom_2d(out.freqs[k].fx, out.freqs[k].fy, dims);
    const CMatrix VhV    = V.adjoint() * V;
    const Eigen::MatrixXd G = VhV.cwiseAbs2();
    const RVector b      = (V.adjoint() * T * V).diagonal().real();
    RVector sigma        = G.colPivHouseholderQr().solve(b);
    out.powers.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
    {
        if (sigma[k] < 0.0)
        {
            ++out.clamped_powers;
            sigma[k] = 0.0;
        }
        out.powers[k] = sigma[k];
    }
    const double tnorm = T.norm();
    const CMatrix fit  = V * sigma.asDiagonal() * V.adjoint();
    out.residual       = tnorm > 0.0 ? (T - fit).norm() / tnorm : 0.0;
    return out;
}

AmplitudeFit recover_amplitudes(const DataVector& s, const std::vector<Frequency2D>& freqs,
                                SceneDims dims, double cond_limit)
{
    dims.validate();
    if (s.size() != dims.size())
        throw DimensionError("data vector length does not match dims");
    const auto K = static_cast<Eigen::Index>(freqs.size());
    if (K > dims.size())
        throw ContractError("more frequencies than samples");
    AmplitudeFit out;
    if (K == 0)
        return out;

    CMatrix A(dims.size(), K);
    for (Eigen::Index k = 0; k < K; ++k)
        A.col(k) = atom_2d(freqs[k].fx, freqs[k].fy, dims);
    Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    out.condition     = sv[K - 1] > 0.0 ? sv[0] / sv[K - 1] : std::numeric_limits<double>::infinity();
    out.ill_conditioned = !(out.condition <= cond_limit);
    const CVector x     = svd.solve(s);
    out.amps.assign(x.data(), x.data() + K);
    return out;
}

} // namespace gridless2d
