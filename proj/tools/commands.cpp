#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <gridless2d/bench_metrics.hpp>

namespace gridless2d::cli
{

namespace
{

std::shared_ptr<spdlog::logger> make_logger()
{
    auto log = spdlog::stderr_color_mt("gridless2d");
    log->set_pattern("[%l] %v");
    const char* env = std::getenv("GRIDLESS2D_LOG");
    const std::string level = env ? env : "info";
    if (level == "error")
        log->set_level(spdlog::level::err);
    else if (level == "debug")
        log->set_level(spdlog::level::debug);
    else
    {
        log->set_level(spdlog::level::info);
        if (level != "info")
            log->warn("GRIDLESS2D_LOG='{}' not one of error, info, debug; using info", level);
    }
    return log;
}

spdlog::logger& logger()
{
    static auto log = make_logger();
    return *log;
}

std::uint64_t parse_u64(std::string_view text, const std::string& what)
{
    std::uint64_t v = 0;
    auto [ptr, ec]  = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(what + ": expected a non-negative integer, got '" + std::string(text) + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        parts.push_back(item);
    return parts;
}

std::vector<int> to_counts(const std::vector<std::uint64_t>& v)
{
    return {v.begin(), v.end()};
}

/// Solver config from --config (if any) over `base`, then --weight-init.
SolverConfig load_solver(const std::string& config_path, const std::string& weight_init,
                         SolverConfig base)
{
    if (!config_path.empty())
        base = config_from_json(read_json_file(config_path), base);
    if (!weight_init.empty())
        base.weight_init = WeightInit::parse(weight_init);
    return base;
}

json decomposition_report(const Extraction& ex, int rank)
{
    return {{"rank", rank},
            {"residual", ex.decomposition.residual},
            {"clamped_powers", ex.decomposition.clamped_powers},
            {"ill_conditioned", ex.decomposition.ill_conditioned || ex.amplitudes.ill_conditioned},
            {"pencil_condition", ex.decomposition.pencil_condition},
            {"scatterers", decomposition_to_json(ex.decomposition, ex.amplitudes)}};
}

int choose_rank(const RecoveryResult& rec, std::optional<int> rank, double rank_tol)
{
    if (rank)
        return *rank;
    return estimate_rank(assemble(rec.u_hat), rank_tol);
}

//
// synth
//
struct SynthArgs
{
    std::string preset;
    std::string scene;
    std::string dims = "14,14";
    std::uint64_t seed = 0;
    std::string out;
    std::string scene_out;
};

int cmd_synth(const SynthArgs& a)
{
    if (a.preset.empty() == a.scene.empty())
        throw ParseError("synth: give exactly one of --preset or --scene");
    SceneFile scene;
    if (!a.preset.empty())
    {
        scene.dims       = parse_dims(a.dims);
        scene.scatterers = with_random_phases(preset_frequencies(a.preset), a.seed);
    }
    else
    {
        scene = scene_from_json(read_json_file(a.scene));
    }
    const DataMatrix S = synthesize(scene.scatterers, scene.dims);
    write_json_file(a.out, data_to_json(S));
    if (!a.scene_out.empty())
        write_json_file(a.scene_out, scene_to_json(scene));
    logger().info("wrote {}x{} data for {} scatterers to {}", scene.dims.N, scene.dims.M,
                  scene.scatterers.size(), a.out);
    return exit_ok;
}

//
// mask
//
struct MaskArgs
{
    std::string dims = "14,14";
    int samples      = 90;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_mask(const MaskArgs& a)
{
    const SceneDims dims       = parse_dims(a.dims);
    const ObservationMask mask = random_mask(dims, a.samples, a.seed);
    write_json_file(a.out, mask_to_json(mask));
    logger().info("wrote mask with {} of {} entries to {}", mask.count(), dims.size(), a.out);
    return exit_ok;
}

//
// recover
//
struct RecoverArgs
{
    std::string data;
    std::string mask;
    std::string method = "rwtm";
    std::string config;
    std::string weight_init;
    std::optional<int> rank;
    double rank_tol = 1e-6;
    std::string out;
    std::string residuals;
};

int cmd_recover(const RecoverArgs& a)
{
    const DataMatrix S         = data_from_json(read_json_file(a.data));
    const ObservationMask mask = mask_from_json(read_json_file(a.mask));
    if (S.rows() != mask.dims().N || S.cols() != mask.dims().M)
        throw DimensionError("data and mask dimensions disagree");
    const Method method     = parse_method(a.method);
    const SolverConfig cfg  = load_solver(a.config, a.weight_init, SolverConfig{});
    const auto obs          = apply_mask(S, mask);

    logger().info("recovering {}x{} data from {} samples with {}", mask.dims().N, mask.dims().M,
                  mask.count(), to_string(method));
    const RecoveryResult rec =
        method == Method::anm ? anm_solve(obs, mask, cfg) : rwtm_solve(obs, mask, cfg);
    for (std::size_t i = 0; i < rec.passes.size(); ++i)
    {
        const auto& p = rec.passes[i];
        logger().debug("pass {}: {} iterations, primal {:.3e}, dual {:.3e}, objective {:.6g}", i,
                       p.iterations, p.primal_residual, p.dual_residual, p.objective);
    }

    const int rank       = choose_rank(rec, a.rank, a.rank_tol);
    const Extraction ex  = extract_scatterers(rec, mask.dims(), rank);
    json out             = {{"method", to_string(method)},
                            {"config", config_to_json(cfg)},
                            {"recovery", recovery_to_json(rec)},
                            {"decomposition", decomposition_report(ex, rank)}};
    write_json_file(a.out, out);
    if (!a.residuals.empty())
        write_text_file(a.residuals, residuals_csv(rec));

    std::printf("converged=%s inner=%d outer=%d primal=%.3e dual=%.3e rank=%d residual=%.3e\n",
                rec.converged ? "yes" : "no", rec.inner_iterations, rec.outer_iterations,
                rec.primal_residual, rec.dual_residual, rank, ex.decomposition.residual);
    if (!rec.converged)
    {
        logger().warn("solver stopped at the iteration cap before meeting its tolerance");
        return exit_not_converged;
    }
    return exit_ok;
}

//
// decompose
//
struct DecomposeArgs
{
    std::string input;
    std::optional<int> rank;
    double rank_tol = 1e-6;
    double cluster_tol = 1e-2;
    std::string out;
};

int cmd_decompose(const DecomposeArgs& a)
{
    const json doc = read_json_file(a.input);
    RecoveryResult rec;
    SceneDims dims;
    bool have_data = false;
    if (doc.contains("recovery"))
    {
        const json& r = doc["recovery"];
        if (!r.contains("u_hat"))
            throw ParseError("recovery: missing field 'u_hat'");
        dims      = coeffs_from_json(r["u_hat"]).dims();
        rec       = recovery_from_json(r, dims);
        have_data = true;
    }
    else
    {
        rec.u_hat = coeffs_from_json(doc);
        dims      = rec.u_hat.dims();
    }
    MappOptions opts;
    opts.cluster_tol = a.cluster_tol;
    const int rank   = choose_rank(rec, a.rank, a.rank_tol);
    Extraction ex;
    ex.decomposition = mapp_decompose(rec.u_hat, rank, opts);
    if (have_data)
        ex.amplitudes = recover_amplitudes(rec.s_hat, ex.decomposition.freqs, dims, opts.cond_limit);
    write_json_file(a.out, decomposition_report(ex, rank));
    logger().info("extracted {} scatterers, relative residual {:.3e}", ex.decomposition.freqs.size(),
                  ex.decomposition.residual);
    return exit_ok;
}

//
// bench
//
struct BenchArgs
{
    std::string scenario;
    std::string preset;
    std::string dims;
    std::string samples;
    std::string seeds;
    std::string method;
    std::string config;
    std::string weight_init;
    std::optional<int> rank;
    bool timing = false;
    bool experiment = false;
    std::string out;
};

void log_row(const BenchRow& r)
{
    if (!r.error.empty())
    {
        logger().warn("{} n={} seed={} failed: {}", to_string(r.method), r.sample_count, r.seed,
                      r.error);
        return;
    }
    logger().info("{} n={} seed={}: data_mse {:.3e}, max pair error {:.3e}, {} iterations",
                  to_string(r.method), r.sample_count, r.seed, r.data_mse, r.max_pair_error,
                  r.inner_iterations);
}

int cmd_bench(const BenchArgs& a)
{
    ScenarioConfig cfg;
    cfg.preset        = "airbus18";
    cfg.sample_counts = {90};
    cfg.seeds         = {0};
    cfg.methods       = {Method::anm, Method::rwtm};
    if (a.experiment)
        cfg.solver = experiment_solver_config();
    if (!a.scenario.empty())
        cfg = scenario_from_json(read_json_file(a.scenario), cfg);
    if (!a.preset.empty())
    {
        cfg.preset = a.preset;
        cfg.scene.clear();
    }
    if (!a.dims.empty())
        cfg.dims = parse_dims(a.dims);
    if (!a.samples.empty())
        cfg.sample_counts = to_counts(parse_index_list(a.samples));
    if (!a.seeds.empty())
        cfg.seeds = parse_index_list(a.seeds);
    if (!a.method.empty())
    {
        cfg.methods.clear();
        if (a.method == "both")
            cfg.methods = {Method::anm, Method::rwtm};
        else
            cfg.methods = {parse_method(a.method)};
    }
    cfg.solver = load_solver(a.config, a.weight_init, cfg.solver);
    if (a.rank)
        cfg.rank = a.rank;
    cfg.validate();

    const BenchReport report = run_scenario(cfg, log_row);
    std::filesystem::create_directories(a.out);
    write_text_file(std::filesystem::path(a.out) / "bench.csv", bench_csv(report, a.timing));
    write_json_file(std::filesystem::path(a.out) / "bench.json", bench_to_json(report, a.timing));
    logger().info("wrote {} rows to {}", report.rows.size(), a.out);
    return exit_ok;
}

//
// repro-paper
//
std::string pair_table_csv(const std::vector<Frequency2D>& truth, const BenchRow& row)
{
    std::ostringstream os;
    os << "truth_index,fx_true,fy_true,est_index,fx_est,fy_est,pair_error,amp_abs\n";
    if (!row.error.empty())
        return os.str();
    const FrequencyMatch match = match_frequencies(truth, row.recovered);
    for (const auto& p : match.pairs)
    {
        const auto& t = truth[static_cast<std::size_t>(p.truth)];
        const auto& e = row.recovered[static_cast<std::size_t>(p.est)];
        const double amp =
            static_cast<std::size_t>(p.est) < row.amplitudes.size() ? std::abs(row.amplitudes[static_cast<std::size_t>(p.est)]) : NAN;
        os << p.truth << ',' << format_double(t.fx) << ',' << format_double(t.fy) << ',' << p.est
           << ',' << format_double(e.fx) << ',' << format_double(e.fy) << ','
           << format_double(p.error) << ',' << format_double(amp) << '\n';
    }
    for (int k : match.unmatched_truth)
    {
        const auto& t = truth[static_cast<std::size_t>(k)];
        os << k << ',' << format_double(t.fx) << ',' << format_double(t.fy) << ",-1,nan,nan,nan,nan\n";
    }
    return os.str();
}

json row_summary(const BenchRow& r)
{
    return {{"method", to_string(r.method)},
            {"sample_count", r.sample_count},
            {"seed", r.seed},
            {"data_mse", r.data_mse},
            {"freq_mse", r.freq_mse},
            {"max_pair_error", r.max_pair_error},
            {"recovered_count", r.recovered_count},
            {"converged", r.converged},
            {"inner_iterations", r.inner_iterations},
            {"error", r.error}};
}

/// Strip the header of a bench CSV and prefix each row with a label column.
std::string labelled_rows(const std::string& csv, const std::string& label)
{
    std::string out;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        out += label + "," + line + "\n";
    return out;
}

std::string csv_header(const std::string& csv)
{
    return csv.substr(0, csv.find('\n'));
}

} // namespace

SceneDims parse_dims(const std::string& text)
{
    const auto parts = split(text, ',');
    if (parts.size() != 2)
        throw ParseError("--dims: expected N,M, got '" + text + "'");
    SceneDims d{static_cast<int>(parse_u64(parts[0], "--dims")),
                static_cast<int>(parse_u64(parts[1], "--dims"))};
    d.validate();
    return d;
}

std::vector<std::uint64_t> parse_index_list(const std::string& text)
{
    std::vector<std::uint64_t> out;
    for (const auto& item : split(text, ','))
    {
        const auto dash = item.find('-');
        if (dash == std::string::npos)
        {
            out.push_back(parse_u64(item, "list entry"));
            continue;
        }
        const auto lo = parse_u64(item.substr(0, dash), "range start");
        const auto hi = parse_u64(item.substr(dash + 1), "range end");
        if (hi < lo)
            throw ParseError("range '" + item + "' is empty");
        for (auto v = lo; v <= hi; ++v)
            out.push_back(v);
    }
    if (out.empty())
        throw ParseError("empty list");
    return out;
}

int repro_paper(const ReproOptions& opts)
{
    if (opts.seed_count < 1)
        throw ContractError("seed count must be positive");
    std::filesystem::create_directories(opts.out_dir);
    const auto path = [&](const char* name) { return opts.out_dir / name; };

    std::vector<std::uint64_t> seeds;
    for (int k = 0; k < opts.seed_count; ++k)
        seeds.push_back(opts.reference_seed + static_cast<std::uint64_t>(k));

    ScenarioConfig base;
    base.preset        = "airbus18";
    base.dims          = opts.dims;
    base.sample_counts = {opts.samples};
    base.seeds         = {opts.reference_seed};
    base.methods       = {Method::rwtm};
    base.solver        = opts.solver;

    json manifest = {{"reference_seed", opts.reference_seed},
                     {"seeds", seeds},
                     {"solver", config_to_json(opts.solver)},
                     {"experiments", json::object()},
                     {"failures", json::array()}};
    int failures     = 0;
    auto note_errors = [&](const std::string& name, const BenchReport& rep) {
        for (const auto& r : rep.rows)
        {
            if (r.error.empty())
                continue;
            ++failures;
            manifest["failures"].push_back({{"experiment", name},
                                            {"method", to_string(r.method)},
                                            {"sample_count", r.sample_count},
                                            {"seed", r.seed},
                                            {"error", r.error}});
        }
    };

    // weighting initializations
    const std::vector<std::pair<const char*, WeightInit>> inits = {
        {"fig3a", WeightInit{}},
        {"fig3b", WeightInit{WeightInit::Kind::center_ones, opts.center_size, 0}},
        {"fig3c", WeightInit{WeightInit::Kind::random, 128, opts.reference_seed}}};
    for (const auto& [name, init] : inits)
    {
        ScenarioConfig cfg      = base;
        cfg.solver.weight_init  = init;
        logger().info("{}: weight init {}", name, init.to_string());
        const BenchReport rep   = run_scenario(cfg, log_row);
        const std::string file  = std::string(name) + ".csv";
        write_text_file(path(file.c_str()), pair_table_csv(cfg.frequencies(), rep.rows.front()));
        note_errors(name, rep);
        manifest["experiments"][name] = {{"file", file},
                                         {"scenario", scenario_to_json(cfg)},
                                         {"summary", row_summary(rep.rows.front())}};
    }

    // well-separated and close-pair scenes
    {
        std::string body;
        std::string header;
        json summaries = json::array();
        for (const char* preset : {"airbus18", "airbus19close"})
        {
            ScenarioConfig cfg = base;
            cfg.preset         = preset;
            cfg.seeds          = seeds;
            logger().info("fig4_5: scene {} over {} seeds", preset, seeds.size());
            const BenchReport rep = run_scenario(cfg, log_row);
            const std::string csv = bench_csv(rep);
            header                = csv_header(csv);
            body += labelled_rows(csv, preset);
            note_errors(std::string("fig4_5/") + preset, rep);
            const SeparationCheck sep = min_separation(cfg.frequencies(), opts.dims.N);
            summaries.push_back({{"scene", preset},
                                 {"min_separation", sep.min_sep},
                                 {"delta_f", sep.delta_f},
                                 {"separation_satisfied", sep.satisfied},
                                 {"scenario", scenario_to_json(cfg)}});
        }
        write_text_file(path("fig4_5.csv"), "scene," + header + "\n" + body);
        manifest["experiments"]["fig4_5"] = {{"file", "fig4_5.csv"}, {"scenes", summaries}};
    }

    // MSE against sample count
    {
        ScenarioConfig cfg = base;
        cfg.sample_counts  = opts.sweep_counts;
        cfg.seeds          = seeds;
        cfg.methods        = {Method::anm, Method::rwtm};
        logger().info("fig6: {} counts x {} seeds", cfg.sample_counts.size(), seeds.size());
        const BenchReport rep = run_scenario(cfg, log_row);
        write_text_file(path("fig6.csv"), bench_csv(rep));
        note_errors("fig6", rep);

        json means = json::array();
        for (Method m : cfg.methods)
        {
            for (int count : cfg.sample_counts)
            {
                double sum = 0.0;
                int n      = 0;
                for (const auto& r : rep.rows)
                {
                    if (r.method == m && r.sample_count == count)
                    {
                        sum += r.data_mse;
                        ++n;
                    }
                }
                means.push_back({{"method", to_string(m)},
                                 {"sample_count", count},
                                 {"mean_data_mse", n > 0 ? sum / n : NAN}});
            }
        }
        manifest["experiments"]["fig6"] = {
            {"file", "fig6.csv"}, {"scenario", scenario_to_json(cfg)}, {"mean_data_mse", means}};
    }

    write_json_file(path("manifest.json"), manifest);
    logger().info("wrote figure bundle to {} ({} failed rows)", opts.out_dir.string(), failures);
    return failures;
}

int run(int argc, char** argv)
{
    CLI::App app{"Gridless 2D sparse-aperture scatterer recovery"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    SynthArgs synth;
    auto* sc_synth = app.add_subcommand("synth", "Synthesize a noise-free data matrix");
    sc_synth->add_option("--preset", synth.preset, "Named scene: airbus18 or airbus19close");
    sc_synth->add_option("--scene", synth.scene, "Scene JSON file")->check(CLI::ExistingFile);
    sc_synth->add_option("--dims", synth.dims, "N,M for presets")->capture_default_str();
    sc_synth->add_option("--seed", synth.seed, "Amplitude phase seed for presets")->capture_default_str();
    sc_synth->add_option("--out", synth.out, "Output data JSON")->required();
    sc_synth->add_option("--scene-out", synth.scene_out, "Also write the scene used");

    MaskArgs mask;
    auto* sc_mask = app.add_subcommand("mask", "Draw a random observation mask");
    sc_mask->add_option("--dims", mask.dims, "N,M")->capture_default_str();
    sc_mask->add_option("--samples", mask.samples, "Number of observed entries")->capture_default_str();
    sc_mask->add_option("--seed", mask.seed, "Mask seed")->capture_default_str();
    sc_mask->add_option("--out", mask.out, "Output mask JSON")->required();

    RecoverArgs rec;
    auto* sc_rec = app.add_subcommand("recover", "Complete the data and extract scatterers");
    sc_rec->add_option("--data", rec.data, "Data JSON")->required()->check(CLI::ExistingFile);
    sc_rec->add_option("--mask", rec.mask, "Mask JSON")->required()->check(CLI::ExistingFile);
    sc_rec->add_option("--method", rec.method, "anm or rwtm")->capture_default_str();
    sc_rec->add_option("--config", rec.config, "Solver config JSON")->check(CLI::ExistingFile);
    sc_rec->add_option("--weight-init", rec.weight_init, "identity, center:SIZE or random:SEED");
    sc_rec->add_option("--rank", rec.rank, "Decomposition rank (default: estimated)");
    sc_rec->add_option("--rank-tol", rec.rank_tol, "Relative eigenvalue cutoff for the rank estimate")
        ->capture_default_str();
    sc_rec->add_option("--out", rec.out, "Output result JSON")->required();
    sc_rec->add_option("--residuals", rec.residuals, "Write the residual log as CSV");

    DecomposeArgs dec;
    auto* sc_dec = app.add_subcommand("decompose", "Vandermonde decomposition of a 2LT matrix");
    sc_dec->add_option("--in", dec.input, "Coefficient JSON or a recover result")
        ->required()
        ->check(CLI::ExistingFile);
    sc_dec->add_option("--rank", dec.rank, "Decomposition rank (default: estimated)");
    sc_dec->add_option("--rank-tol", dec.rank_tol, "Relative eigenvalue cutoff")->capture_default_str();
    sc_dec->add_option("--cluster-tol", dec.cluster_tol, "Repeated-frequency cluster width")
        ->capture_default_str();
    sc_dec->add_option("--out", dec.out, "Output JSON")->required();

    BenchArgs bench;
    auto* sc_bench = app.add_subcommand("bench", "Seeded recovery sweep with CSV and JSON reports");
    sc_bench->add_option("--scenario", bench.scenario, "Scenario JSON")->check(CLI::ExistingFile);
    sc_bench->add_option("--preset", bench.preset, "airbus18 or airbus19close");
    sc_bench->add_option("--dims", bench.dims, "N,M");
    sc_bench->add_option("--samples", bench.samples, "Sample counts, e.g. 60,80 or 60-62");
    sc_bench->add_option("--seeds", bench.seeds, "Seeds, e.g. 0-9");
    sc_bench->add_option("--method", bench.method, "anm, rwtm or both");
    sc_bench->add_option("--config", bench.config, "Solver config JSON")->check(CLI::ExistingFile);
    sc_bench->add_option("--weight-init", bench.weight_init, "identity, center:SIZE or random:SEED");
    sc_bench->add_option("--rank", bench.rank, "Decomposition rank (default: true count)");
    sc_bench->add_flag("--experiment-config", bench.experiment,
                       "Start from the tuned experiment solver settings");
    sc_bench->add_flag("--timing", bench.timing, "Include wall time (not byte-reproducible)");
    sc_bench->add_option("--out", bench.out, "Output directory")->required();

    ReproOptions repro;
    repro.solver = experiment_solver_config();
    std::string repro_dims = "14,14";
    std::string repro_counts = "60,80,100,120";
    std::string repro_config;
    auto* sc_repro = app.add_subcommand("repro-paper", "Regenerate all figure-analog CSVs");
    sc_repro->add_option("--out", repro.out_dir, "Output directory")->required();
    sc_repro->add_option("--seed", repro.reference_seed, "Reference seed")->capture_default_str();
    sc_repro->add_option("--seeds", repro.seed_count, "Number of seeds per sweep")->capture_default_str();
    sc_repro->add_option("--samples", repro.samples, "Samples for the fixed-count experiments")
        ->capture_default_str();
    sc_repro->add_option("--counts", repro_counts, "Sample counts of the MSE sweep")->capture_default_str();
    sc_repro->add_option("--dims", repro_dims, "N,M")->capture_default_str();
    sc_repro->add_option("--center-size", repro.center_size, "Block edge of the center-ones weight")
        ->capture_default_str();
    sc_repro->add_option("--config", repro_config, "Solver config JSON over the experiment settings")
        ->check(CLI::ExistingFile);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_bad_input;
    }

    try
    {
        if (*sc_synth)
            return cmd_synth(synth);
        if (*sc_mask)
            return cmd_mask(mask);
        if (*sc_rec)
            return cmd_recover(rec);
        if (*sc_dec)
            return cmd_decompose(dec);
        if (*sc_bench)
            return cmd_bench(bench);
        if (*sc_repro)
        {
            repro.dims         = parse_dims(repro_dims);
            repro.sweep_counts = to_counts(parse_index_list(repro_counts));
            repro.solver       = load_solver(repro_config, "", repro.solver);
            const int failed   = repro_paper(repro);
            return failed == 0 ? exit_ok : exit_failure;
        }
    }
    catch (const ParseError& e)
    {
        logger().error("{}", e.what());
        return exit_bad_input;
    }
    catch (const std::invalid_argument& e)
    {
        // DimensionError and ContractError
        logger().error("{}", e.what());
        return exit_bad_input;
    }
    catch (const std::exception& e)
    {
        logger().error("{}", e.what());
        return exit_failure;
    }
    return exit_failure;
}

} // namespace gridless2d::cli
