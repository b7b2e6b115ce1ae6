#ifndef GRIDLESS2D_SDP_RWTM_HPP
#define GRIDLESS2D_SDP_RWTM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gridless2d/multilevel_toeplitz.hpp>
#include <gridless2d/signal_model.hpp>

namespace gridless2d
{

/// Starting weight of the reweighted iteration.
struct WeightInit
{
    enum class Kind
    {
        identity,
        center_ones,
        random
    };

    Kind kind          = Kind::identity;
    int size           = 128;  // center_ones block edge
    std::uint64_t seed = 0;    // random

    /// "identity", "center:SIZE" or "random:SEED".
    static WeightInit parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const WeightInit&, const WeightInit&) = default;
};

struct SolverConfig
{
    double rho          = 1.0;
    int max_inner_iter  = 5000;
    double eps_abs      = 1e-6;
    double eps_rel      = 1e-6;
    int max_outer_iter  = 10;
    double outer_tol    = 1e-4;
    double mu0_scale    = 1.0;
    double mu_decay     = 0.1;
    double mu_min_scale = 1e-8;
    WeightInit weight_init;
    /// Residual balancing of rho (off by default). When on, rho is doubled
    /// or halved whenever one residual exceeds ten times the other, checked
    /// every `adaptive_interval` inner iterations.
    bool adaptive_rho     = false;
    int adaptive_interval = 10;

    void validate() const;

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// One row of the residual log.
struct ResidualRecord
{
    int outer_iter   = 0;
    int inner_iter   = 0;
    double primal    = 0.0;
    double dual      = 0.0;
    double objective = 0.0;
};

/// Result of one weighted trace minimization.
struct WeightedTraceSolution
{
    double t = 0.0;
    DataVector s;
    ToeplitzCoeffs u;
    int iterations         = 0;
    bool converged         = false;
    double primal_residual = 0.0;
    double dual_residual   = 0.0;
    /// t + tr(Winv * assemble(u)) at the returned point.
    double objective = 0.0;
    std::vector<ResidualRecord> history;
};

struct RecoveryResult
{
    DataVector s_hat;
    ToeplitzCoeffs u_hat;
    double t_hat         = 0.0;
    int inner_iterations = 0;  // summed over outer passes
    int outer_iterations = 0;  // number of weighted solves performed
    bool converged       = false;
    double primal_residual = 0.0;
    double dual_residual   = 0.0;
    /// t_i + tr(Winv_i * T_i) per outer pass.
    std::vector<double> objectives;
    /// t_i + ln det(T_i + mu_i I) per outer pass (after pass 0).
    std::vector<double> surrogate;
    std::vector<double> mu;
    std::vector<ResidualRecord> history;
    /// Per-pass solutions, residual logs stripped (they live in `history`).
    std::vector<WeightedTraceSolution> passes;
};

///
/// The recovery as it stood after the first weighted pass. For an identity
/// initial weight this is bit-identical to anm_solve on the same inputs.
///
RecoveryResult first_pass(const RecoveryResult& result);

/// Hermitian constraint matrix [[t, s^H], [s, T]].
CMatrix lift(double t, const DataVector& s, const CMatrix& T);

///
/// Closed-form minimizer of the ADMM primal subproblem
///
///   t + <Gw, u> + rho/2 * || lift(t, s, assemble(u)) - B ||_F^2
///
/// over t >= 0, u with Hermitian generating symmetry, and s with the
/// observed entries pinned. `weight_adjoint` is adjoint(Winv).
///
struct PrimalIterate
{
    double t = 0.0;
    DataVector s;
    ToeplitzCoeffs u;
};

PrimalIterate primal_update(const CMatrix& B, SceneDims dims, const std::vector<int>& observed,
                            const CVector& values, const CMatrix& weight_adjoint, double rho);

///
/// First-order solver for
///
///   min  t + tr(Winv * assemble(u))
///   s.t. [[t, s^H], [s, assemble(u)]] >= 0,  s on the mask = observations.
///
/// The solver keeps its ADMM state (Z, L) between calls so a sequence of
/// solves with changing weights warm-starts from the previous point.
/// Internally the observations are divided by their largest magnitude and
/// Winv by its mean eigenvalue; both are exact rescalings of the problem and
/// are undone on the returned values. Residuals in the log refer to the
/// rescaled problem.
///
class WeightedTraceSolver
{
public:
    WeightedTraceSolver(const std::vector<Observation>& obs, const ObservationMask& mask,
                        SolverConfig cfg);

    WeightedTraceSolution solve(const CMatrix& winv, int outer_index = 0);

    SceneDims dims() const noexcept { return m_dims; }

private:
    SceneDims m_dims;
    SolverConfig m_cfg;
    std::vector<int> m_observed;
    CVector m_raw_values;
    CVector m_values;  // normalized observations
    double m_data_scale = 1.0;
    CMatrix m_Z;
    CMatrix m_L;
    CMatrix m_Q;
    double m_rho         = 1.0;
    int m_positive_count = 0;
};

WeightedTraceSolution solve_weighted_trace(const std::vector<Observation>& obs,
                                           const ObservationMask& mask, const CMatrix& winv,
                                           const SolverConfig& cfg);

/// Initial inverse weight for the reweighted iteration.
CMatrix initial_weight_inverse(const WeightInit& init, SceneDims dims);

/// Atomic norm minimization baseline: a single solve with Winv = I.
RecoveryResult anm_solve(const std::vector<Observation>& obs, const ObservationMask& mask,
                         const SolverConfig& cfg);

/// Reweighted trace minimization.
RecoveryResult rwtm_solve(const std::vector<Observation>& obs, const ObservationMask& mask,
                          const SolverConfig& cfg);

} // namespace gridless2d

#endif
