#ifndef GRIDLESS2D_TOOLS_COMMANDS_HPP
#define GRIDLESS2D_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <gridless2d/io.hpp>

namespace gridless2d::cli
{

enum ExitCode : int
{
    exit_ok           = 0,
    exit_failure      = 1,
    exit_bad_input    = 2,
    exit_not_converged = 3
};

/// "N,M"
SceneDims parse_dims(const std::string& text);
/// Comma-separated integers; "a-b" expands to an inclusive range.
std::vector<std::uint64_t> parse_index_list(const std::string& text);

struct ReproOptions
{
    std::filesystem::path out_dir;
    SceneDims dims{14, 14};
    std::uint64_t reference_seed = 0;
    int seed_count               = 10;
    int samples                  = 90;
    std::vector<int> sweep_counts{60, 80, 100, 120};
    int center_size = 128;
    SolverConfig solver;
};

/// Figure-analog bundle; returns the number of failed rows.
int repro_paper(const ReproOptions& opts);

/// Parses the command line, runs one subcommand and returns its exit code.
int run(int argc, char** argv);

} // namespace gridless2d::cli

#endif
