#include <gridless2d/bench_metrics.hpp>

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <numbers>

#include <gridless2d/rng.hpp>

namespace gridless2d
{

double wrap_dist(double a, double b) noexcept
{
    const double d = std::fmod(std::abs(a - b), 1.0);
    return std::min(d, 1.0 - d);
}

std::vector<int> hungarian_assignment(const Eigen::MatrixXd& cost)
{
    const int n = static_cast<int>(cost.rows());
    const int m = static_cast<int>(cost.cols());
    if (n > m)
        throw DimensionError("hungarian_assignment expects rows <= cols");
    if (n == 0)
        return {};

    constexpr double inf = std::numeric_limits<double>::infinity();
    // potentials and matching, 1-based with column 0 as the virtual root
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i)
    {
        p[0]   = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do
        {
            used[j0]     = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1       = 0;
            for (int j = 1; j <= m; ++j)
            {
                if (used[j])
                    continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j])
                {
                    minv[j] = cur;
                    way[j]  = j0;
                }
                if (minv[j] < delta)
                {
                    delta = minv[j];
                    j1    = j;
                }
            }
            for (int j = 0; j <= m; ++j)
            {
                if (used[j])
                {
                    u[p[j]] += delta;
                    v[j] -= delta;
                }
                else
                {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do
        {
            const int j1 = way[j0];
            p[j0]        = p[j1];
            j0           = j1;
        } while (j0 != 0);
    }

    std::vector<int> assignment(n, -1);
    for (int j = 1; j <= m; ++j)
        if (p[j] != 0)
            assignment[p[j] - 1] = j - 1;
    return assignment;
}

FrequencyMatch match_frequencies(const std::vector<Frequency2D>& truth,
                                 const std::vector<Frequency2D>& est)
{
    const bool transposed = truth.size() > est.size();
    const auto& rows      = transposed ? est : truth;
    const auto& cols      = transposed ? truth : est;

    Eigen::MatrixXd cost(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        for (std::size_t j = 0; j < cols.size(); ++j)
        {
            const double dx = wrap_dist(rows[i].fx, cols[j].fx);
            const double dy = wrap_dist(rows[i].fy, cols[j].fy);
            cost(i, j)      = dx * dx + dy * dy;
        }
    }
    const std::vector<int> assign = hungarian_assignment(cost);

    FrequencyMatch out;
    std::vector<char> col_used(cols.size(), 0);
    for (std::size_t i = 0; i < assign.size(); ++i)
    {
        const int j = assign[i];
        col_used[j] = 1;
        const double c = cost(static_cast<Eigen::Index>(i), j);
        out.total_cost += c;
        const int ti = transposed ? j : static_cast<int>(i);
        const int ei = transposed ? static_cast<int>(i) : j;
        out.pairs.push_back({ti, ei, std::sqrt(c)});
    }
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const MatchedPair& a, const MatchedPair& b) { return a.truth < b.truth; });
    for (std::size_t j = 0; j < cols.size(); ++j)
    {
        if (!col_used[j])
            (transposed ? out.unmatched_truth : out.unmatched_est).push_back(static_cast<int>(j));
    }
    return out;
}

FreqMse freq_mse(const std::vector<Frequency2D>& truth, const std::vector<Frequency2D>& est)
{
    FreqMse out;
    out.size_mismatch = truth.size() != est.size();
    const FrequencyMatch match = match_frequencies(truth, est);
    if (match.pairs.empty())
    {
        out.value = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.value = match.total_cost / static_cast<double>(match.pairs.size());
    return out;
}

double data_mse(const DataMatrix& S_true, const DataVector& s_rec)
{
    if (S_true.size() != s_rec.size())
        throw DimensionError("data_mse: dimension mismatch");
    return (vectorize(S_true) - s_rec).squaredNorm() / static_cast<double>(s_rec.size());
}

SeparationCheck min_separation(const std::vector<Frequency2D>& freqs, int n1)
{
    if (freqs.size() < 2)
        throw ContractError("min_separation needs at least two points");
    if (n1 < 1)
        throw ContractError("n1 must be positive");
    SeparationCheck out;
    out.delta_f = 0.45 / n1;
    out.min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < freqs.size(); ++i)
    {
        for (std::size_t j = i + 1; j < freqs.size(); ++j)
        {
            const double sep = std::max(wrap_dist(freqs[i].fx, freqs[j].fx),
                                        wrap_dist(freqs[i].fy, freqs[j].fy));
            out.min_sep      = std::min(out.min_sep, sep);
        }
    }
    out.satisfied = out.min_sep >= out.delta_f;
    return out;
}

std::vector<Frequency2D> frequencies_of(const ScattererSet& scene)
{
    std::vector<Frequency2D> f;
    f.reserve(scene.size());
    for (const auto& s : scene)
        f.push_back({s.fx, s.fy});
    return f;
}

std::vector<Frequency2D> preset_frequencies(std::string_view name)
{
    static const std::vector<double> fx18 = {0.81, 0.71, 0.65, 0.43, 0.37, 0.28, 0.47, 0.75, 0.69,
                                             0.8,  0.58, 0.28, 0.5,  0.55, 0.35, 0.51, 0.62, 0.52};
    static const std::vector<double> fy18 = {0.83, 0.71, 0.63, 0.69, 0.78, 0.85, 0.37, 0.3,  0.4,
                                             0.2,  0.55, 0.48, 0.27, 0.15, 0.45, 0.62, 0.48, 0.47};
    std::vector<Frequency2D> out;
    if (name == "airbus19close")
    {
        out.push_back({0.80, 0.82});
    }
    else if (name != "airbus18")
    {
        throw ContractError("unknown preset '" + std::string(name) + "'");
    }
    for (std::size_t k = 0; k < fx18.size(); ++k)
        out.push_back({fx18[k], fy18[k]});
    return out;
}

ScattererSet with_random_phases(const std::vector<Frequency2D>& freqs, std::uint64_t seed)
{
    // separate stream from the mask draw that shares this seed
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    ScattererSet scene;
    scene.reserve(freqs.size());
    for (const auto& f : freqs)
        scene.push_back({f.fx, f.fy, std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform())});
    return scene;
}

std::string to_string(Method m)
{
    return m == Method::anm ? "anm" : "rwtm";
}

Method parse_method(std::string_view text)
{
    if (text == "anm")
        return Method::anm;
    if (text == "rwtm")
        return Method::rwtm;
    throw ContractError("unknown method '" + std::string(text) + "' (expected anm or rwtm)");
}

std::vector<Frequency2D> ScenarioConfig::frequencies() const
{
    return preset.empty() ? frequencies_of(scene) : preset_frequencies(preset);
}

ScattererSet ScenarioConfig::scene_for_seed(std::uint64_t seed) const
{
    if (!preset.empty() || random_phases)
        return with_random_phases(frequencies(), seed);
    return scene;
}

void ScenarioConfig::validate() const
{
    dims.validate();
    solver.validate();
    if (sample_counts.empty() || seeds.empty() || methods.empty())
        throw ContractError("scenario needs sample counts, seeds and methods");
    if (preset.empty() && scene.empty())
        throw ContractError("scenario needs a preset or an explicit scene");
    for (int c : sample_counts)
        if (c < 1 || c > dims.size())
            throw ContractError("sample count outside [1, NM]");
    if (!(mapp.cluster_tol > 0.0) || !(rank_tol > 0.0))
        throw ContractError("cluster_tol and rank_tol must be positive");
    if (rank && *rank < 0)
        throw ContractError("rank must be non-negative");
}

Extraction extract_scatterers(const RecoveryResult& rec, SceneDims dims, int rank,
                              const MappOptions& opts)
{
    Extraction out;
    out.decomposition = mapp_decompose(rec.u_hat, rank, opts);
    out.amplitudes    = recover_amplitudes(rec.s_hat, out.decomposition.freqs, dims, opts.cond_limit);
    return out;
}

namespace
{

BenchRow score_row(Method method, int count, std::uint64_t seed, const RecoveryResult& rec,
                   const DataMatrix& S, const std::vector<Frequency2D>& truth,
                   const ScenarioConfig& cfg)
{
    BenchRow row;
    row.method           = method;
    row.sample_count     = count;
    row.seed             = seed;
    row.true_count       = static_cast<int>(truth.size());
    row.converged        = rec.converged;
    row.inner_iterations = rec.inner_iterations;
    row.outer_iterations = rec.outer_iterations;
    row.data_mse         = data_mse(S, rec.s_hat);

    const int rank = cfg.estimate_rank ? estimate_rank(assemble(rec.u_hat), cfg.rank_tol)
                                       : cfg.rank.value_or(static_cast<int>(truth.size()));
    const Extraction ex = extract_scatterers(rec, cfg.dims, rank, cfg.mapp);
    row.recovered       = ex.decomposition.freqs;
    row.amplitudes      = ex.amplitudes.amps;
    row.recovered_count = static_cast<int>(row.recovered.size());
    row.mapp_residual   = ex.decomposition.residual;

    const FrequencyMatch match = match_frequencies(truth, row.recovered);
    row.freq_mse               = freq_mse(truth, row.recovered).value;
    double sum                 = 0.0;
    for (const auto& p : match.pairs)
    {
        row.max_pair_error = std::max(row.max_pair_error, p.error);
        sum += p.error;
    }
    row.mean_pair_error = match.pairs.empty() ? std::numeric_limits<double>::quiet_NaN()
                                              : sum / static_cast<double>(match.pairs.size());
    // unmatched truth points count as not recovered
    if (!match.unmatched_truth.empty())
        row.max_pair_error = std::numeric_limits<double>::infinity();
    return row;
}

BenchRow failed_row(Method method, int count, std::uint64_t seed, std::string what)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    BenchRow row;
    row.method          = method;
    row.sample_count    = count;
    row.seed            = seed;
    row.data_mse        = nan;
    row.freq_mse        = nan;
    row.max_pair_error  = nan;
    row.mean_pair_error = nan;
    row.mapp_residual   = nan;
    row.error           = std::move(what);
    return row;
}

bool has_method(const ScenarioConfig& cfg, Method m)
{
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
}

} // namespace

SolverConfig experiment_solver_config()
{
    SolverConfig cfg;
    cfg.rho            = 10.0;
    cfg.max_inner_iter = 600;
    cfg.max_outer_iter = 3;
    return cfg;
}

BenchReport run_scenario(const ScenarioConfig& cfg, const RowCallback& on_row)
{
    cfg.validate();
    BenchReport report;
    report.config                      = cfg;
    const std::vector<Frequency2D> truth = cfg.frequencies();
    const bool want_anm                = has_method(cfg, Method::anm);
    const bool want_rwtm               = has_method(cfg, Method::rwtm);
    // with an identity start the first reweighted pass is the ANM solve
    const bool share_first_pass =
        want_anm && want_rwtm && cfg.solver.weight_init.kind == WeightInit::Kind::identity;

    std::map<std::tuple<int, int, std::uint64_t>, BenchRow> rows;
    using clock = std::chrono::steady_clock;
    for (int count : cfg.sample_counts)
    {
        for (std::uint64_t seed : cfg.seeds)
        {
            try
            {
                const ScattererSet scene = cfg.scene_for_seed(seed);
                const DataMatrix S       = synthesize(scene, cfg.dims);
                const ObservationMask mask = random_mask(cfg.dims, count, seed);
                const auto obs           = apply_mask(S, mask);

                if (want_rwtm)
                {
                    const auto t0 = clock::now();
                    const RecoveryResult rec = rwtm_solve(obs, mask, cfg.solver);
                    const double elapsed =
                        std::chrono::duration<double>(clock::now() - t0).count();
                    BenchRow r = score_row(Method::rwtm, count, seed, rec, S, truth, cfg);
                    r.wall_time_s = elapsed;
                    if (on_row)
                        on_row(r);
                    rows[{1, count, seed}] = std::move(r);
                    if (share_first_pass)
                    {
                        BenchRow a =
                            score_row(Method::anm, count, seed, first_pass(rec), S, truth, cfg);
                        a.wall_time_s = elapsed * rec.passes.front().iterations /
                                        std::max(1, rec.inner_iterations);
                        if (on_row)
                            on_row(a);
                        rows[{0, count, seed}] = std::move(a);
                    }
                }
                if (want_anm && !share_first_pass)
                {
                    const auto t0 = clock::now();
                    const RecoveryResult rec = anm_solve(obs, mask, cfg.solver);
                    BenchRow a    = score_row(Method::anm, count, seed, rec, S, truth, cfg);
                    a.wall_time_s = std::chrono::duration<double>(clock::now() - t0).count();
                    if (on_row)
                        on_row(a);
                    rows[{0, count, seed}] = std::move(a);
                }
            }
            catch (const std::exception& e)
            {
                for (Method m : cfg.methods)
                {
                    const int key = m == Method::anm ? 0 : 1;
                    if (rows.contains({key, count, seed}))
                        continue;
                    rows[{key, count, seed}] = failed_row(m, count, seed, e.what());
                    if (on_row)
                        on_row(rows[{key, count, seed}]);
                }
            }
        }
    }

    // (method, count, seed) order, following the configured lists
    for (Method m : {Method::anm, Method::rwtm})
    {
        if (!has_method(cfg, m))
            continue;
        for (int count : cfg.sample_counts)
            for (std::uint64_t seed : cfg.seeds)
                report.rows.push_back(rows.at({m == Method::anm ? 0 : 1, count, seed}));
    }
    return report;
}

} // namespace gridless2d
