#include <gtest/gtest.h>

#include <cstdlib>

#include <gridless2d/linalg.hpp>
#include <gridless2d/multilevel_toeplitz.hpp>

#include "test_support.hpp"

using namespace gridless2d;
using namespace gridless2d::testing;

namespace
{

ToeplitzCoeffs delta(SceneDims d, int p, int q)
{
    ToeplitzCoeffs u(d);
    u.set(p, q, 1.0);
    return u;
}

const std::vector<SceneDims> small_dims = {{2, 2}, {2, 3}, {2, 5}, {3, 2}, {3, 3},
                                           {3, 5}, {5, 2}, {5, 3}, {5, 5}};

} // namespace

TEST(ToeplitzCoeffsTest, SetKeepsGeneratingSymmetry)
{
    ToeplitzCoeffs u({3, 4});
    u.set(1, -2, {0.5, 2.0});
    EXPECT_EQ(u(1, -2), cplx(0.5, 2.0));
    EXPECT_EQ(u(-1, 2), cplx(0.5, -2.0));
    u.set(0, 0, {3.0, 1.0});
    EXPECT_EQ(u(0, 0), cplx(3.0, 0.0));
}

TEST(ToeplitzCoeffsTest, FromArrayRejectsAsymmetricInput)
{
    CMatrix v = CMatrix::Zero(3, 3);
    v(0, 0)   = 1.0;
    EXPECT_THROW(ToeplitzCoeffs::from_array({2, 2}, v), ContractError);
    v(2, 2) = 1.0;
    EXPECT_NO_THROW(ToeplitzCoeffs::from_array({2, 2}, v));
    EXPECT_THROW(ToeplitzCoeffs::from_array({2, 2}, CMatrix::Zero(3, 4)), DimensionError);
}

TEST(ToeplitzCoeffsTest, SymmetrizedIsNearestSymmetricArray)
{
    Rng rng(3);
    const SceneDims d{3, 4};
    const CMatrix v       = random_matrix(rng, 5, 7);
    const ToeplitzCoeffs u = ToeplitzCoeffs::symmetrized(d, v);
    EXPECT_NO_THROW(ToeplitzCoeffs::from_array(d, u.values()));
    EXPECT_NEAR(u(0, 0).imag(), 0.0, 1e-15);
}

TEST(DiagonalClassTableTest, MatchesBruteForceEnumeration)
{
    for (int N = 2; N <= 5; ++N)
    {
        for (int M = 2; M <= 5; ++M)
        {
            const SceneDims d{N, M};
            Eigen::MatrixXi brute = Eigen::MatrixXi::Zero(2 * N - 1, 2 * M - 1);
            for (int n = 0; n < N; ++n)
                for (int m = 0; m < M; ++m)
                    for (int np = 0; np < N; ++np)
                        for (int mp = 0; mp < M; ++mp)
                            ++brute(n - np + N - 1, m - mp + M - 1);
            const DiagonalClassTable table(d);
            EXPECT_EQ(table.counts(), brute) << N << "x" << M;
            EXPECT_EQ(table.counts().sum(), d.size() * d.size());
        }
    }
}

TEST(Assemble, DeltaAtOriginIsIdentity)
{
    const SceneDims d{3, 4};
    EXPECT_EQ(assemble(delta(d, 0, 0)), CMatrix::Identity(12, 12));
}

TEST(Assemble, ZeroFrequencyScattererIsAllOnes)
{
    const SceneDims d{3, 3};
    const CMatrix T = assemble(coeffs_from_scene({{0.0, 0.0, 1.0}}, d));
    EXPECT_LE((T - CMatrix::Ones(9, 9)).norm(), 1e-14);
}

TEST(Assemble, MatchesOuterProductsOfAtoms)
{
    Rng rng(11);
    const SceneDims d{3, 3};
    for (int trial = 0; trial < 20; ++trial)
    {
        ScattererSet scene;
        CMatrix want = CMatrix::Zero(9, 9);
        for (int k = 0; k < 2; ++k)
        {
            const Scatterer s{rng.uniform(), rng.uniform(), 0.1 + rng.uniform()};
            scene.push_back(s);
            const CVector c = atom_2d(s.fx, s.fy, d);
            want += s.amp.real() * c * c.adjoint();
        }
        EXPECT_LE(rel_diff(assemble(coeffs_from_scene(scene, d)), want), 1e-14);
    }
}

TEST(Assemble, EntriesFollowTheOffsets)
{
    Rng rng(2);
    const SceneDims d{3, 4};
    const ToeplitzCoeffs u = random_coeffs(rng, d);
    const CMatrix T        = assemble(u);
    for (int n = 0; n < d.N; ++n)
        for (int m = 0; m < d.M; ++m)
            for (int np = 0; np < d.N; ++np)
                for (int mp = 0; mp < d.M; ++mp)
                    EXPECT_EQ(T(d.index(n, m), d.index(np, mp)), u(n - np, m - mp));
    EXPECT_EQ(T, T.adjoint().eval());
}

TEST(CoeffsFromScene, Examples)
{
    const ToeplitzCoeffs u = coeffs_from_scene({{0.0, 0.0, 2.0}}, {2, 2});
    EXPECT_LE((u.values() - CMatrix::Constant(3, 3, 2.0)).norm(), 1e-15);

    const ToeplitzCoeffs v = coeffs_from_scene({{0.5, 0.0, 1.0}}, {3, 3});
    for (int p = -2; p <= 2; ++p)
        for (int q = -2; q <= 2; ++q)
            EXPECT_NEAR(std::abs(v(p, q) - cplx(p % 2 == 0 ? 1.0 : -1.0)), 0.0, 1e-14);
}

TEST(CoeffsFromScene, DirectFormula)
{
    const SceneDims d{4, 5};
    const ScattererSet scene{{0.13, 0.77, 1.5}, {0.62, 0.05, 0.25}};
    const ToeplitzCoeffs u = coeffs_from_scene(scene, d);
    for (int p = -3; p <= 3; ++p)
    {
        for (int q = -4; q <= 4; ++q)
        {
            cplx want = 0.0;
            for (const auto& s : scene)
                want += s.amp * phasor(s.fx * p + s.fy * q);
            EXPECT_NEAR(std::abs(u(p, q) - want), 0.0, 1e-13);
        }
    }
}

TEST(CoeffsFromScene, RankEqualsScattererCount)
{
    const SceneDims d{6, 6};
    const ScattererSet scene{{0.1, 0.2, 1.0}, {0.45, 0.7, 2.0}, {0.8, 0.35, 0.5}};
    const RVector ev = hermitian_eig(assemble(coeffs_from_scene(scene, d))).values;
    int above        = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        above += ev[k] > 1e-9 * ev.maxCoeff();
    EXPECT_EQ(above, 3);
}

TEST(CoeffsFromScene, NonnegativePowersGivePsdMatrix)
{
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial)
    {
        const SceneDims d{2 + static_cast<int>(rng.below(5)), 2 + static_cast<int>(rng.below(5))};
        ScattererSet scene;
        const int K = 1 + static_cast<int>(rng.below(6));
        for (int k = 0; k < K; ++k)
            scene.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
        const RVector ev = hermitian_eig(assemble(coeffs_from_scene(scene, d))).values;
        EXPECT_GE(ev.minCoeff(), -1e-10 * ev.maxCoeff());
    }
}

TEST(CoeffsFromScene, RejectsComplexOrNegativeAmplitudes)
{
    EXPECT_THROW(coeffs_from_scene({{0.1, 0.1, {1.0, 0.5}}}, {3, 3}), ContractError);
    EXPECT_THROW(coeffs_from_scene({{0.1, 0.1, -1.0}}, {3, 3}), ContractError);
}

TEST(Adjoint, IdentityConcentratesOnOrigin)
{
    const SceneDims d{3, 4};
    const CMatrix G = adjoint(CMatrix::Identity(12, 12), d);
    for (int i = 0; i < G.rows(); ++i)
        for (int k = 0; k < G.cols(); ++k)
            EXPECT_EQ(G(i, k), (i == 2 && k == 3) ? cplx(12.0) : cplx(0.0));
}

TEST(Adjoint, CountsTheDiagonalClass)
{
    const SceneDims d{4, 3};
    ToeplitzCoeffs u(d);
    u.set(1, 0, 1.0);
    const CMatrix G = adjoint(assemble(u), d);
    EXPECT_EQ(G(1 + 3, 0 + 2), cplx((d.N - 1) * d.M));
    EXPECT_EQ(G(-1 + 3, 0 + 2), cplx((d.N - 1) * d.M));
    EXPECT_NEAR(G.cwiseAbs().sum(), 2.0 * (d.N - 1) * d.M, 1e-12);
}

TEST(Adjoint, IdentityHoldsOnRandomInstances)
{
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial)
    {
        const SceneDims d      = small_dims[static_cast<std::size_t>(trial) % small_dims.size()];
        const CMatrix A        = random_matrix(rng, d.size(), d.size());
        const ToeplitzCoeffs u = random_coeffs(rng, d);
        const cplx lhs         = (A.adjoint() * assemble(u)).trace();
        const CMatrix G        = adjoint(A, d);
        const cplx rhs         = (G.conjugate().array() * u.values().array()).sum();
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs))) << "trial " << trial;
    }
}

TEST(Adjoint, RejectsWrongSize)
{
    EXPECT_THROW(adjoint(CMatrix::Identity(5, 5), {2, 3}), DimensionError);
}

TEST(ProjectTo2lt, RoundTripOnExactStructure)
{
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial)
    {
        const SceneDims d      = small_dims[static_cast<std::size_t>(trial) % small_dims.size()];
        const ToeplitzCoeffs u = random_coeffs(rng, d);
        const ToeplitzCoeffs v = project_to_2lt(assemble(u), d);
        EXPECT_LE((v.values() - u.values()).norm(), 1e-14 * u.norm()) << "trial " << trial;
        EXPECT_LE(rel_diff(assemble(v), assemble(u)), 1e-14);
    }
}

TEST(ProjectTo2lt, IdentityProjectsToDelta)
{
    const SceneDims d{3, 3};
    EXPECT_LE((project_to_2lt(CMatrix::Identity(9, 9), d).values() - delta(d, 0, 0).values()).norm(),
              1e-15);
}

TEST(ProjectTo2lt, IsTheNearestStructuredMatrix)
{
    Rng rng(17);
    const SceneDims d{3, 4};
    const CMatrix A        = random_hermitian(rng, 12);
    const ToeplitzCoeffs P = project_to_2lt(A, d);
    const double best      = (A - assemble(P)).norm();
    for (int trial = 0; trial < 100; ++trial)
    {
        const ToeplitzCoeffs v = random_coeffs(rng, d);
        EXPECT_LE(best, (A - assemble(v)).norm());
        // small perturbations of the optimum never do better either
        ToeplitzCoeffs w = P;
        const int p      = static_cast<int>(rng.below(5)) - 2;
        const int q      = static_cast<int>(rng.below(7)) - 3;
        w.set(p, q, P(p, q) + cplx(1e-3 * rng.normal(), 1e-3 * rng.normal()));
        EXPECT_LE(best, (A - assemble(w)).norm() + 1e-12);
    }
}

TEST(TraceWeighted, Examples)
{
    const SceneDims d{3, 5};
    ToeplitzCoeffs u(d);
    u.set(0, 0, 2.5);
    u.set(1, 2, {1.0, -1.0});
    EXPECT_NEAR(trace_weighted(u, CMatrix::Identity(15, 15)), 15 * 2.5, 1e-12);

    const ToeplitzCoeffs single = coeffs_from_scene({{0.37, 0.81, 1.0}}, d);
    EXPECT_NEAR(trace_weighted(single, CMatrix::Identity(15, 15)), 15.0, 1e-12);
}

TEST(TraceWeighted, MatchesDenseProduct)
{
    Rng rng(5);
    for (const SceneDims d : small_dims)
    {
        const CMatrix W        = random_hermitian(rng, d.size());
        const ToeplitzCoeffs u = random_coeffs(rng, d);
        const double dense     = (W * assemble(u)).trace().real();
        EXPECT_LE(std::abs(trace_weighted(u, W) - dense), 1e-12 * std::max(1.0, std::abs(dense)));
    }
}

TEST(TraceWeighted, RejectsNonHermitianWeight)
{
    Rng rng(1);
    const SceneDims d{2, 2};
    EXPECT_THROW(trace_weighted(random_coeffs(rng, d), random_matrix(rng, 4, 4)), ContractError);
}
