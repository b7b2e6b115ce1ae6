#include <gridless2d/io.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gridless2d
{

namespace
{

const json& require(const json& j, const std::string& key, const std::string& context)
{
    if (!j.is_object())
        throw ParseError(context + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(context + ": missing field '" + key + "'");
    return *it;
}

double number_at(const json& j, const std::string& field)
{
    if (!j.is_number())
        throw ParseError(field + ": expected a number");
    return j.get<double>();
}

int int_at(const json& j, const std::string& field)
{
    if (!j.is_number_integer())
        throw ParseError(field + ": expected an integer");
    return j.get<int>();
}

json cvec_to_json(const CVector& v)
{
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(complex_to_json(v[i]));
    return arr;
}

CVector cvec_from_json(const json& j, const std::string& field)
{
    if (!j.is_array())
        throw ParseError(field + ": expected an array");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i], field + "[" + std::to_string(i) + "]");
    return v;
}

std::vector<double> dvec_from_json(const json& j, const std::string& field)
{
    if (!j.is_array())
        throw ParseError(field + ": expected an array");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(number_at(j[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

/// Rethrow library errors as ParseError with the document context.
template <typename F>
auto with_context(const std::string& context, F&& f)
{
    try
    {
        return f();
    }
    catch (const ParseError&)
    {
        throw;
    }
    catch (const std::invalid_argument& e)
    {
        throw ParseError(context + ": " + e.what());
    }
}

} // namespace

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

json complex_to_json(cplx z)
{
    return json::array({z.real(), z.imag()});
}

cplx complex_from_json(const json& j, const std::string& field)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(field + ": expected a complex number [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json dims_to_json(SceneDims d)
{
    return {{"N", d.N}, {"M", d.M}};
}

SceneDims dims_from_json(const json& j, const std::string& field)
{
    SceneDims d{int_at(require(j, "N", field), field + ".N"), int_at(require(j, "M", field), field + ".M")};
    with_context(field, [&] {
        d.validate();
        return 0;
    });
    return d;
}

json scene_to_json(const SceneFile& scene)
{
    json pts = json::array();
    for (const auto& s : scene.scatterers)
    {
        pts.push_back({{"fx", s.fx}, {"fy", s.fy}, {"amp_re", s.amp.real()}, {"amp_im", s.amp.imag()}});
    }
    json out = {{"dims", dims_to_json(scene.dims)}, {"scatterers", pts}};
    if (scene.radar)
    {
        const RadarParams& r = *scene.radar;
        out["radar"] = {{"f0", r.f0}, {"delta_f", r.delta_f}, {"delta_theta", r.delta_theta},
                        {"c", r.c},   {"R0", r.R0}};
    }
    return out;
}

SceneFile scene_from_json(const json& j)
{
    SceneFile scene;
    scene.dims      = dims_from_json(require(j, "dims", "scene"), "scene.dims");
    const json& pts = require(j, "scatterers", "scene");
    if (!pts.is_array())
        throw ParseError("scene.scatterers: expected an array");
    if (pts.empty())
        throw ParseError("scene.scatterers: scene is empty");
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        const std::string ctx = "scene.scatterers[" + std::to_string(i) + "]";
        const json& p         = pts[i];
        Scatterer s;
        s.fx = number_at(require(p, "fx", ctx), ctx + ".fx");
        s.fy = number_at(require(p, "fy", ctx), ctx + ".fy");
        const double re = number_at(require(p, "amp_re", ctx), ctx + ".amp_re");
        const double im = p.contains("amp_im") ? number_at(p["amp_im"], ctx + ".amp_im") : 0.0;
        s.amp           = {re, im};
        if (!std::isfinite(s.fx) || !std::isfinite(s.fy) || !std::isfinite(re) || !std::isfinite(im))
            throw ParseError(ctx + ": values must be finite");
        scene.scatterers.push_back(s);
    }
    if (j.contains("radar") && !j["radar"].is_null())
    {
        const json& r = j["radar"];
        RadarParams p;
        p.f0          = number_at(require(r, "f0", "scene.radar"), "scene.radar.f0");
        p.delta_f     = number_at(require(r, "delta_f", "scene.radar"), "scene.radar.delta_f");
        p.delta_theta = number_at(require(r, "delta_theta", "scene.radar"), "scene.radar.delta_theta");
        if (r.contains("c"))
            p.c = number_at(r["c"], "scene.radar.c");
        if (r.contains("R0"))
            p.R0 = number_at(r["R0"], "scene.radar.R0");
        with_context("scene.radar", [&] {
            p.validate();
            return 0;
        });
        scene.radar = p;
    }
    return scene;
}

json mask_to_json(const ObservationMask& mask)
{
    json obs = json::array();
    for (const auto& [n, m] : mask.observed())
        obs.push_back(json::array({n, m}));
    return {{"dims", dims_to_json(mask.dims())}, {"observed", obs}};
}

ObservationMask mask_from_json(const json& j)
{
    const SceneDims dims = dims_from_json(require(j, "dims", "mask"), "mask.dims");
    const json& obs      = require(j, "observed", "mask");
    if (!obs.is_array())
        throw ParseError("mask.observed: expected an array");
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < obs.size(); ++i)
    {
        const std::string ctx = "mask.observed[" + std::to_string(i) + "]";
        if (!obs[i].is_array() || obs[i].size() != 2)
            throw ParseError(ctx + ": expected [n, m]");
        pairs.emplace_back(int_at(obs[i][0], ctx), int_at(obs[i][1], ctx));
    }
    return with_context("mask", [&] { return ObservationMask(dims, std::move(pairs)); });
}

json data_to_json(const DataMatrix& S)
{
    json rows = json::array();
    for (Eigen::Index n = 0; n < S.rows(); ++n)
    {
        json row = json::array();
        for (Eigen::Index m = 0; m < S.cols(); ++m)
            row.push_back(complex_to_json(S(n, m)));
        rows.push_back(std::move(row));
    }
    return {{"dims", dims_to_json({static_cast<int>(S.rows()), static_cast<int>(S.cols())})},
            {"data", rows}};
}

DataMatrix data_from_json(const json& j)
{
    const SceneDims dims = dims_from_json(require(j, "dims", "data"), "data.dims");
    const json& rows     = require(j, "data", "data");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dims.N))
        throw ParseError("data.data: expected " + std::to_string(dims.N) + " rows");
    DataMatrix S(dims.N, dims.M);
    for (int n = 0; n < dims.N; ++n)
    {
        const json& row = rows[n];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(dims.M))
            throw ParseError("data.data[" + std::to_string(n) + "]: expected " + std::to_string(dims.M) +
                             " entries");
        for (int m = 0; m < dims.M; ++m)
            S(n, m) = complex_from_json(row[m], "data.data[" + std::to_string(n) + "][" + std::to_string(m) + "]");
    }
    return S;
}

json coeffs_to_json(const ToeplitzCoeffs& u)
{
    const CMatrix& v = u.values();
    json rows        = json::array();
    for (Eigen::Index i = 0; i < v.rows(); ++i)
    {
        json row = json::array();
        for (Eigen::Index k = 0; k < v.cols(); ++k)
            row.push_back(complex_to_json(v(i, k)));
        rows.push_back(std::move(row));
    }
    return {{"dims", dims_to_json(u.dims())}, {"u", rows}};
}

ToeplitzCoeffs coeffs_from_json(const json& j)
{
    const SceneDims dims = dims_from_json(require(j, "dims", "coeffs"), "coeffs.dims");
    const json& rows     = require(j, "u", "coeffs");
    const int R          = 2 * dims.N - 1;
    const int C          = 2 * dims.M - 1;
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(R))
        throw ParseError("coeffs.u: expected " + std::to_string(R) + " rows");
    CMatrix v(R, C);
    for (int i = 0; i < R; ++i)
    {
        if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(C))
            throw ParseError("coeffs.u[" + std::to_string(i) + "]: expected " + std::to_string(C) + " entries");
        for (int k = 0; k < C; ++k)
            v(i, k) = complex_from_json(rows[i][k], "coeffs.u[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return with_context("coeffs", [&] { return ToeplitzCoeffs::from_array(dims, std::move(v), 1e-9); });
}

json config_to_json(const SolverConfig& cfg)
{
    return {{"rho", cfg.rho},
            {"max_inner_iter", cfg.max_inner_iter},
            {"eps_abs", cfg.eps_abs},
            {"eps_rel", cfg.eps_rel},
            {"max_outer_iter", cfg.max_outer_iter},
            {"outer_tol", cfg.outer_tol},
            {"mu0_scale", cfg.mu0_scale},
            {"mu_decay", cfg.mu_decay},
            {"mu_min_scale", cfg.mu_min_scale},
            {"weight_init", cfg.weight_init.to_string()},
            {"adaptive_rho", cfg.adaptive_rho},
            {"adaptive_interval", cfg.adaptive_interval}};
}

SolverConfig config_from_json(const json& j, SolverConfig base)
{
    if (!j.is_object())
        throw ParseError("config: expected an object");
    static const std::set<std::string> known = {"rho",       "max_inner_iter", "eps_abs",
                                                "eps_rel",   "max_outer_iter", "outer_tol",
                                                "mu0_scale", "mu_decay",       "mu_min_scale",
                                                "weight_init", "adaptive_rho",  "adaptive_interval"};
    for (const auto& [key, value] : j.items())
    {
        if (!known.contains(key))
            throw ParseError("config: unknown key '" + key + "'");
    }
    auto num = [&](const char* key, double& dst) {
        if (j.contains(key))
            dst = number_at(j[key], std::string("config.") + key);
    };
    auto integer = [&](const char* key, int& dst) {
        if (j.contains(key))
            dst = int_at(j[key], std::string("config.") + key);
    };
    num("rho", base.rho);
    integer("max_inner_iter", base.max_inner_iter);
    num("eps_abs", base.eps_abs);
    num("eps_rel", base.eps_rel);
    integer("max_outer_iter", base.max_outer_iter);
    num("outer_tol", base.outer_tol);
    num("mu0_scale", base.mu0_scale);
    num("mu_decay", base.mu_decay);
    num("mu_min_scale", base.mu_min_scale);
    if (j.contains("adaptive_rho"))
    {
        if (!j["adaptive_rho"].is_boolean())
            throw ParseError("config.adaptive_rho: expected a boolean");
        base.adaptive_rho = j["adaptive_rho"].get<bool>();
    }
    integer("adaptive_interval", base.adaptive_interval);
    if (j.contains("weight_init"))
    {
        if (!j["weight_init"].is_string())
            throw ParseError("config.weight_init: expected a string");
        base.weight_init = with_context("config.weight_init", [&] {
            return WeightInit::parse(j["weight_init"].get<std::string>());
        });
    }
    with_context("config", [&] {
        base.validate();
        return 0;
    });
    return base;
}

json scenario_to_json(const ScenarioConfig& c)
{
    json methods = json::array();
    for (Method m : c.methods)
        methods.push_back(to_string(m));
    json cfg = {{"dims", dims_to_json(c.dims)},
                {"sample_counts", c.sample_counts},
                {"seeds", c.seeds},
                {"methods", methods},
                {"random_phases", c.random_phases},
                {"solver", config_to_json(c.solver)},
                {"cluster_tol", c.mapp.cluster_tol},
                {"estimate_rank", c.estimate_rank},
                {"rank_tol", c.rank_tol}};
    if (c.preset.empty())
        cfg["scene"] = scene_to_json({c.dims, c.scene, std::nullopt})["scatterers"];
    else
        cfg["preset"] = c.preset;
    if (c.rank)
        cfg["rank"] = *c.rank;
    return cfg;
}

ScenarioConfig scenario_from_json(const json& j, ScenarioConfig base)
{
    if (!j.is_object())
        throw ParseError("scenario: expected an object");
    static const std::set<std::string> known = {
        "preset",      "scene",         "dims", "sample_counts", "seeds",   "methods",
        "random_phases", "solver",      "cluster_tol", "rank",   "estimate_rank", "rank_tol"};
    for (const auto& [key, value] : j.items())
    {
        if (!known.contains(key))
            throw ParseError("scenario: unknown key '" + key + "'");
    }
    if (j.contains("preset") && j.contains("scene"))
        throw ParseError("scenario: give either 'preset' or 'scene', not both");
    if (j.contains("dims"))
        base.dims = dims_from_json(j["dims"], "scenario.dims");
    if (j.contains("preset"))
    {
        if (!j["preset"].is_string())
            throw ParseError("scenario.preset: expected a string");
        base.preset = j["preset"].get<std::string>();
        with_context("scenario.preset", [&] { return preset_frequencies(base.preset); });
        base.scene.clear();
    }
    if (j.contains("scene"))
    {
        const SceneFile sf = scene_from_json({{"dims", dims_to_json(base.dims)}, {"scatterers", j["scene"]}});
        base.preset.clear();
        base.scene = sf.scatterers;
    }
    if (j.contains("sample_counts"))
    {
        const json& a = j["sample_counts"];
        if (!a.is_array())
            throw ParseError("scenario.sample_counts: expected an array");
        base.sample_counts.clear();
        for (std::size_t i = 0; i < a.size(); ++i)
            base.sample_counts.push_back(int_at(a[i], "scenario.sample_counts[" + std::to_string(i) + "]"));
    }
    if (j.contains("seeds"))
    {
        const json& a = j["seeds"];
        if (!a.is_array())
            throw ParseError("scenario.seeds: expected an array");
        base.seeds.clear();
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            if (!a[i].is_number_integer() || (!a[i].is_number_unsigned() && a[i].get<std::int64_t>() < 0))
                throw ParseError("scenario.seeds[" + std::to_string(i) + "]: expected a non-negative integer");
            base.seeds.push_back(a[i].get<std::uint64_t>());
        }
    }
    if (j.contains("methods"))
    {
        const json& a = j["methods"];
        if (!a.is_array())
            throw ParseError("scenario.methods: expected an array");
        base.methods.clear();
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            const std::string ctx = "scenario.methods[" + std::to_string(i) + "]";
            if (!a[i].is_string())
                throw ParseError(ctx + ": expected a string");
            base.methods.push_back(with_context(ctx, [&] { return parse_method(a[i].get<std::string>()); }));
        }
    }
    if (j.contains("random_phases"))
    {
        if (!j["random_phases"].is_boolean())
            throw ParseError("scenario.random_phases: expected a boolean");
        base.random_phases = j["random_phases"].get<bool>();
    }
    if (j.contains("solver"))
        base.solver = config_from_json(j["solver"], base.solver);
    if (j.contains("cluster_tol"))
        base.mapp.cluster_tol = number_at(j["cluster_tol"], "scenario.cluster_tol");
    if (j.contains("rank"))
    {
        if (j["rank"].is_null())
            base.rank.reset();
        else
            base.rank = int_at(j["rank"], "scenario.rank");
    }
    if (j.contains("estimate_rank"))
    {
        if (!j["estimate_rank"].is_boolean())
            throw ParseError("scenario.estimate_rank: expected a boolean");
        base.estimate_rank = j["estimate_rank"].get<bool>();
    }
    if (j.contains("rank_tol"))
        base.rank_tol = number_at(j["rank_tol"], "scenario.rank_tol");
    with_context("scenario", [&] {
        base.validate();
        return 0;
    });
    return base;
}

json decomposition_to_json(const DecompositionResult& dec, const AmplitudeFit& amps)
{
    json out = json::array();
    for (std::size_t k = 0; k < dec.freqs.size(); ++k)
    {
        const cplx a = k < amps.amps.size() ? amps.amps[k] : cplx{};
        out.push_back({{"fx", dec.freqs[k].fx},
                       {"fy", dec.freqs[k].fy},
                       {"power", dec.powers[k]},
                       {"amp_re", a.real()},
                       {"amp_im", a.imag()}});
    }
    return out;
}

json recovery_to_json(const RecoveryResult& rec)
{
    return {{"s_hat", cvec_to_json(rec.s_hat)},
            {"u_hat", coeffs_to_json(rec.u_hat)},
            {"t_hat", rec.t_hat},
            {"inner_iterations", rec.inner_iterations},
            {"outer_iterations", rec.outer_iterations},
            {"converged", rec.converged},
            {"primal_residual", rec.primal_residual},
            {"dual_residual", rec.dual_residual},
            {"objectives", rec.objectives},
            {"surrogate", rec.surrogate},
            {"mu", rec.mu}};
}

RecoveryResult recovery_from_json(const json& j, SceneDims dims)
{
    RecoveryResult rec;
    rec.s_hat = cvec_from_json(require(j, "s_hat", "recovery"), "recovery.s_hat");
    if (rec.s_hat.size() != dims.size())
        throw ParseError("recovery.s_hat: expected " + std::to_string(dims.size()) + " entries");
    rec.u_hat = coeffs_from_json(require(j, "u_hat", "recovery"));
    if (!(rec.u_hat.dims() == dims))
        throw ParseError("recovery.u_hat: dims disagree with the data");
    rec.t_hat            = number_at(require(j, "t_hat", "recovery"), "recovery.t_hat");
    rec.inner_iterations = int_at(require(j, "inner_iterations", "recovery"), "recovery.inner_iterations");
    rec.outer_iterations = int_at(require(j, "outer_iterations", "recovery"), "recovery.outer_iterations");
    const json& conv     = require(j, "converged", "recovery");
    if (!conv.is_boolean())
        throw ParseError("recovery.converged: expected a boolean");
    rec.converged       = conv.get<bool>();
    rec.primal_residual = number_at(require(j, "primal_residual", "recovery"), "recovery.primal_residual");
    rec.dual_residual   = number_at(require(j, "dual_residual", "recovery"), "recovery.dual_residual");
    rec.objectives      = dvec_from_json(require(j, "objectives", "recovery"), "recovery.objectives");
    if (j.contains("surrogate"))
        rec.surrogate = dvec_from_json(j["surrogate"], "recovery.surrogate");
    if (j.contains("mu"))
        rec.mu = dvec_from_json(j["mu"], "recovery.mu");
    return rec;
}

std::string residuals_csv(const RecoveryResult& rec)
{
    std::ostringstream os;
    os << "outer_iter,inner_iter,primal_residual,dual_residual,objective\n";
    for (const auto& r : rec.history)
    {
        os << r.outer_iter << ',' << r.inner_iter << ',' << format_double(r.primal) << ','
           << format_double(r.dual) << ',' << format_double(r.objective) << '\n';
    }
    return os.str();
}

std::string bench_csv(const BenchReport& report, bool include_timing)
{
    std::ostringstream os;
    os << "method,sample_count,seed,data_mse,freq_mse,max_pair_error,mean_pair_error,true_count,"
          "recovered_count,converged,inner_iterations,outer_iterations,mapp_residual";
    if (include_timing)
        os << ",wall_time_s";
    os << ",error\n";
    for (const auto& r : report.rows)
    {
        os << to_string(r.method) << ',' << r.sample_count << ',' << r.seed << ','
           << format_double(r.data_mse) << ',' << format_double(r.freq_mse) << ','
           << format_double(r.max_pair_error) << ',' << format_double(r.mean_pair_error) << ','
           << r.true_count << ',' << r.recovered_count << ',' << (r.converged ? 1 : 0) << ','
           << r.inner_iterations << ',' << r.outer_iterations << ','
           << format_double(r.mapp_residual);
        if (include_timing)
            os << ',' << format_double(r.wall_time_s);
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        os << ',' << err << '\n';
    }
    return os.str();
}

json bench_to_json(const BenchReport& report, bool include_timing)
{
    const json cfg = scenario_to_json(report.config);
    json rows = json::array();
    for (const auto& r : report.rows)
    {
        json freqs = json::array();
        for (std::size_t k = 0; k < r.recovered.size(); ++k)
        {
            const cplx a = k < r.amplitudes.size() ? r.amplitudes[k] : cplx{};
            freqs.push_back({{"fx", r.recovered[k].fx},
                             {"fy", r.recovered[k].fy},
                             {"amp_re", a.real()},
                             {"amp_im", a.imag()}});
        }
        json row = {{"method", to_string(r.method)},
                    {"sample_count", r.sample_count},
                    {"seed", r.seed},
                    {"data_mse", r.data_mse},
                    {"freq_mse", r.freq_mse},
                    {"max_pair_error", r.max_pair_error},
                    {"mean_pair_error", r.mean_pair_error},
                    {"true_count", r.true_count},
                    {"recovered_count", r.recovered_count},
                    {"converged", r.converged},
                    {"inner_iterations", r.inner_iterations},
                    {"outer_iterations", r.outer_iterations},
                    {"mapp_residual", r.mapp_residual},
                    {"error", r.error},
                    {"scatterers", freqs}};
        if (include_timing)
            row["wall_time_s"] = r.wall_time_s;
        rows.push_back(std::move(row));
    }
    return {{"config", cfg}, {"rows", rows}};
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string() + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ParseError(path.string() + ":" + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path.string() + ": cannot open for writing");
    out << text;
    if (!out)
        throw std::runtime_error(path.string() + ": write failed");
}

void write_json_file(const std::filesystem::path& path, const json& j)
{
    write_text_file(path, j.dump(2) + "\n");
}

} // namespace gridless2d
