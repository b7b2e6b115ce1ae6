#ifndef GRIDLESS2D_BENCH_METRICS_HPP
#define GRIDLESS2D_BENCH_METRICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gridless2d/sdp_rwtm.hpp>
#include <gridless2d/signal_model.hpp>
#include <gridless2d/vandermonde_mapp.hpp>

namespace gridless2d
{

/// Cyclic distance on [0, 1): result in [0, 0.5].
double wrap_dist(double a, double b) noexcept;

///
/// Minimum-cost assignment for a rows x cols cost matrix with rows <= cols.
/// Returns the column assigned to each row.
///
std::vector<int> hungarian_assignment(const Eigen::MatrixXd& cost);

struct MatchedPair
{
    int truth = 0;
    int est   = 0;
    /// sqrt(wrap_dist(fx)^2 + wrap_dist(fy)^2)
    double error = 0.0;
};

struct FrequencyMatch
{
    std::vector<MatchedPair> pairs;
    std::vector<int> unmatched_truth;
    std::vector<int> unmatched_est;
    double total_cost = 0.0;
};

/// Optimal matching under cost wrap_dist(fx)^2 + wrap_dist(fy)^2.
FrequencyMatch match_frequencies(const std::vector<Frequency2D>& truth,
                                 const std::vector<Frequency2D>& est);

struct FreqMse
{
    double value = 0.0;
    /// true when the lists differ in length; value then covers the matched subset
    bool size_mismatch = false;
};

FreqMse freq_mse(const std::vector<Frequency2D>& truth, const std::vector<Frequency2D>& est);

/// ||vec(S_true) - s_rec||^2 / (N M)
double data_mse(const DataMatrix& S_true, const DataVector& s_rec);

struct SeparationCheck
{
    double min_sep = 0.0;
    double delta_f = 0.0;
    bool satisfied = false;
};

///
/// Minimum pairwise separation, where a pair's separation is the larger of
/// its two per-dimension cyclic distances, against the limit 0.45 / n1.
///
SeparationCheck min_separation(const std::vector<Frequency2D>& freqs, int n1);

std::vector<Frequency2D> frequencies_of(const ScattererSet& scene);

/// Frequency lists of the named presets "airbus18" and "airbus19close".
std::vector<Frequency2D> preset_frequencies(std::string_view name);

/// Unit-modulus amplitudes with uniformly random phases.
ScattererSet with_random_phases(const std::vector<Frequency2D>& freqs, std::uint64_t seed);

enum class Method
{
    anm,
    rwtm
};

std::string to_string(Method m);
Method parse_method(std::string_view text);

struct ScenarioConfig
{
    /// Preset name, or empty when `scene` is given explicitly.
    std::string preset;
    ScattererSet scene;
    /// Replace amplitudes by seeded unit-modulus random phases per seed.
    bool random_phases = true;
    SceneDims dims{14, 14};
    std::vector<int> sample_counts;
    std::vector<std::uint64_t> seeds;
    std::vector<Method> methods;
    SolverConfig solver;
    MappOptions mapp;
    /// Decomposition rank; when unset, the true scatterer count is used.
    std::optional<int> rank;
    /// Use estimate_rank on the recovered matrix instead of a pinned rank.
    bool estimate_rank = false;
    double rank_tol    = 1e-6;

    /// Frequencies of the configured scene (preset or explicit).
    std::vector<Frequency2D> frequencies() const;
    /// Scene used for a given seed.
    ScattererSet scene_for_seed(std::uint64_t seed) const;

    void validate() const;
};

struct BenchRow
{
    Method method      = Method::anm;
    int sample_count   = 0;
    std::uint64_t seed = 0;
    double data_mse    = 0.0;
    double freq_mse    = 0.0;
    double max_pair_error  = 0.0;
    double mean_pair_error = 0.0;
    int true_count      = 0;
    int recovered_count = 0;
    bool converged      = false;
    int inner_iterations = 0;
    int outer_iterations = 0;
    double mapp_residual = 0.0;
    double wall_time_s   = 0.0;
    /// Non-empty when this row failed; metrics are then NaN.
    std::string error;
    std::vector<Frequency2D> recovered;
    std::vector<cplx> amplitudes;
};

struct BenchReport
{
    ScenarioConfig config;
    std::vector<BenchRow> rows;
};

using RowCallback = std::function<void(const BenchRow&)>;

///
/// Runs every (method, sample_count, seed) combination: draw a mask, solve,
/// decompose, and score. Rows come out in (method, count, seed) order.
/// A failed row records its error and the sweep continues. `on_row` sees
/// each row as soon as it is scored.
///
BenchReport run_scenario(const ScenarioConfig& cfg, const RowCallback& on_row = {});

///
/// Solver settings used by the figure experiments: a larger fixed penalty
/// and a capped per-pass budget, so a 14 x 14 recovery takes ~2400 ADMM
/// iterations instead of up to 55000 under the library defaults.
///
SolverConfig experiment_solver_config();

/// Decompose a recovery: rank selection, MaPP and amplitude fit.
struct Extraction
{
    DecompositionResult decomposition;
    AmplitudeFit amplitudes;
};

Extraction extract_scatterers(const RecoveryResult& rec, SceneDims dims, int rank,
                              const MappOptions& opts = {});

} // namespace gridless2d

#endif
