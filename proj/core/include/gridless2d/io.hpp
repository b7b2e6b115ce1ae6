#ifndef GRIDLESS2D_IO_HPP
#define GRIDLESS2D_IO_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include <gridless2d/bench_metrics.hpp>
#include <gridless2d/multilevel_toeplitz.hpp>
#include <gridless2d/sdp_rwtm.hpp>
#include <gridless2d/signal_model.hpp>
#include <gridless2d/vandermonde_mapp.hpp>

namespace gridless2d
{

using json = nlohmann::json;

/// Malformed input file or document; the message carries line or field context.
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct SceneFile
{
    SceneDims dims;
    ScattererSet scatterers;
    std::optional<RadarParams> radar;
};

// Complex numbers are [re, im] pairs throughout.
json complex_to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& field);

json dims_to_json(SceneDims d);
SceneDims dims_from_json(const json& j, const std::string& field = "dims");

json scene_to_json(const SceneFile& scene);
SceneFile scene_from_json(const json& j);

/// {"dims": {...}, "observed": [[n, m], ...]}
json mask_to_json(const ObservationMask& mask);
ObservationMask mask_from_json(const json& j);

/// {"dims": {...}, "data": [[[re, im], ...], ...]} with N rows of M entries.
json data_to_json(const DataMatrix& S);
DataMatrix data_from_json(const json& j);

/// {"dims": {...}, "u": rows p = -(N-1)..N-1 of columns q = -(M-1)..M-1}
json coeffs_to_json(const ToeplitzCoeffs& u);
ToeplitzCoeffs coeffs_from_json(const json& j);

/// Keys mirror SolverConfig field names; weight_init uses its text form.
json config_to_json(const SolverConfig& cfg);
/// Missing keys keep the value from `base`; unknown keys are rejected.
SolverConfig config_from_json(const json& j, SolverConfig base = {});

///
/// {"preset" | "scene", "dims", "sample_counts", "seeds", "methods",
///  "solver", "random_phases", "cluster_tol", "rank", "estimate_rank"}.
/// Missing keys keep the value from `base`; unknown keys are rejected.
///
json scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(const json& j, ScenarioConfig base = {});

/// [{fx, fy, power, amp_re, amp_im}]
json decomposition_to_json(const DecompositionResult& dec, const AmplitudeFit& amps);

json recovery_to_json(const RecoveryResult& rec);
RecoveryResult recovery_from_json(const json& j, SceneDims dims);

/// Columns outer_iter,inner_iter,primal_residual,dual_residual,objective.
std::string residuals_csv(const RecoveryResult& rec);

/// One row per (method, sample_count, seed). Wall time is only written when
/// requested, so default output is byte-reproducible.
std::string bench_csv(const BenchReport& report, bool include_timing = false);
json bench_to_json(const BenchReport& report, bool include_timing = false);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

} // namespace gridless2d

#endif
