#ifndef GRIDLESS2D_VANDERMONDE_MAPP_HPP
#define GRIDLESS2D_VANDERMONDE_MAPP_HPP

#include <vector>

#include <gridless2d/multilevel_toeplitz.hpp>
#include <gridless2d/signal_model.hpp>

namespace gridless2d
{

/// A paired 2D normalized frequency.
struct Frequency2D
{
    double fx = 0.0;
    double fy = 0.0;

    friend bool operator==(const Frequency2D&, const Frequency2D&) = default;
};

struct MappOptions
{
    /// Eigenvalues of the first-level pencil closer than this (cycles) are
    /// treated as one repeated frequency and split by the second level.
    double cluster_tol = 1e-2;
    /// Pencil pseudoinverses above this condition number flag the result.
    double cond_limit = 1e12;
};

///
/// Paired frequencies and powers of a Vandermonde decomposition
/// T = sum_k power_k c(f_k) c(f_k)^H.
///
struct DecompositionResult
{
    std::vector<Frequency2D> freqs;
    std::vector<double> powers;
    /// ||T - sum_k power_k c_k c_k^H||_F / ||T||_F
    double residual = 0.0;
    /// Number of least-squares powers that came out negative and were set to 0.
    int clamped_powers   = 0;
    bool ill_conditioned = false;
    double pencil_condition = 0.0;
};

/// Number of eigenvalues above rel_tol * lambda_max; 0 for a zero matrix.
int estimate_rank(const CMatrix& T, double rel_tol = 1e-6);

///
/// Matrix pencil with auto-pairing on the 2LT matrix generated by `u`.
///
/// Frequencies of the first level come from the shift invariance between
/// block rows 0..N-2 and 1..N-1 of the signal subspace; the eigenvectors of
/// that pencil then diagonalize the second-level pencil, which pairs each fx
/// with its fy. Repeated first-level frequencies are split by diagonalizing
/// the corresponding block of the second-level pencil.
///
DecompositionResult mapp_decompose(const ToeplitzCoeffs& u, int K, const MappOptions& opts = {});

struct AmplitudeFit
{
    std::vector<cplx> amps;
    double condition     = 0.0;
    bool ill_conditioned = false;
};

/// Least-squares amplitudes of s on the atoms at `freqs`.
AmplitudeFit recover_amplitudes(const DataVector& s, const std::vector<Frequency2D>& freqs,
                                SceneDims dims, double cond_limit = 1e12);

} // namespace gridless2d

#endif
