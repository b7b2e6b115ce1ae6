#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "commands.hpp"

using namespace gridless2d;
namespace fs = std::filesystem;

namespace
{

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int line_count(const std::string& text)
{
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

class Cli : public ::testing::Test
{
protected:
    void SetUp() override
    {
        m_dir = fs::temp_directory_path() /
                ("gridless2d_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(m_dir);
        fs::create_directories(m_dir);
    }
    void TearDown() override { fs::remove_all(m_dir); }

    /// Runs the installed tool with `args`; returns its exit status.
    int tool(const std::string& args) const
    {
        const std::string cmd = "GRIDLESS2D_LOG=error \"" + std::string(GRIDLESS2D_TOOL_PATH) + "\" " + args +
                                " > \"" + (m_dir / "stdout.txt").string() + "\" 2> \"" +
                                (m_dir / "stderr.txt").string() + "\"";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string path(const std::string& name) const { return "\"" + (m_dir / name).string() + "\""; }

    void write(const std::string& name, const std::string& text) const
    {
        std::ofstream(m_dir / name) << text;
    }

    fs::path m_dir;
};

} // namespace

TEST(ParseDims, Accepts)
{
    EXPECT_EQ(cli::parse_dims("14,14"), (SceneDims{14, 14}));
    EXPECT_EQ(cli::parse_dims("3,8"), (SceneDims{3, 8}));
}

TEST(ParseDims, Rejects)
{
    for (const char* bad : {"14", "14,", ",3", "a,b", "1,5", "3,4,5", "-2,3"})
        EXPECT_ANY_THROW(cli::parse_dims(bad)) << bad;
}

TEST(ParseIndexList, ListsAndRanges)
{
    EXPECT_EQ(cli::parse_index_list("0-3"), (std::vector<std::uint64_t>{0, 1, 2, 3}));
    EXPECT_EQ(cli::parse_index_list("60,80,100"), (std::vector<std::uint64_t>{60, 80, 100}));
    EXPECT_EQ(cli::parse_index_list("1,5-6,9"), (std::vector<std::uint64_t>{1, 5, 6, 9}));
    EXPECT_ANY_THROW(cli::parse_index_list(""));
    EXPECT_ANY_THROW(cli::parse_index_list("4-2"));
    EXPECT_ANY_THROW(cli::parse_index_list("x"));
}

TEST_F(Cli, SynthMaskRecoverDecompose)
{
    ASSERT_EQ(tool("synth --preset airbus18 --dims 6,6 --seed 2 --out " + path("preset.json") +
                   " --scene-out " + path("preset_scene.json")),
              0);
    EXPECT_EQ(read_json_file(m_dir / "preset.json")["data"].size(), 6u);
    EXPECT_EQ(read_json_file(m_dir / "preset_scene.json")["scatterers"].size(), 18u);

    write("scene.json", R"({"dims": {"N": 6, "M": 6}, "scatterers": [)"
                        R"({"fx": 0.2, "fy": 0.3, "amp_re": 1.0, "amp_im": 0.0},)"
                        R"({"fx": 0.6, "fy": 0.75, "amp_re": 0.0, "amp_im": 1.5}]})");
    ASSERT_EQ(tool("synth --scene " + path("scene.json") + " --out " + path("data.json")), 0);
    const json data = read_json_file(m_dir / "data.json");

    ASSERT_EQ(tool("mask --dims 6,6 --samples 36 --seed 1 --out " + path("mask.json")), 0);
    EXPECT_EQ(read_json_file(m_dir / "mask.json")["observed"].size(), 36u);

    // full mask echoes the data
    write("cfg.json", R"({"max_inner_iter": 5000, "max_outer_iter": 0, "rho": 10.0})");
    ASSERT_EQ(tool("recover --data " + path("data.json") + " --mask " + path("mask.json") +
                   " --method anm --config " + path("cfg.json") + " --rank 2 --out " + path("rec.json") +
                   " --residuals " + path("res.csv")),
              0);
    const json rec = read_json_file(m_dir / "rec.json");
    const DataMatrix S = data_from_json(data);
    const RecoveryResult r = recovery_from_json(rec["recovery"], {6, 6});
    EXPECT_EQ(r.s_hat, vectorize(S));
    EXPECT_EQ(rec["decomposition"]["scatterers"].size(), 2u);
    EXPECT_EQ(slurp(m_dir / "res.csv").rfind("outer_iter,inner_iter,", 0), 0u);
    EXPECT_NE(slurp(m_dir / "stdout.txt").find("converged"), std::string::npos);

    ASSERT_EQ(tool("decompose --in " + path("rec.json") + " --rank 3 --out " + path("dec.json")), 0);
    EXPECT_EQ(read_json_file(m_dir / "dec.json")["scatterers"].size(), 3u);
}

TEST_F(Cli, SinglePointSceneGivesRankOneData)
{
    write("scene.json",
          R"({"dims": {"N": 5, "M": 4}, "scatterers": [{"fx": 0.3, "fy": 0.8, "amp_re": 1.0, "amp_im": -2.0}]})");
    ASSERT_EQ(tool("synth --scene " + path("scene.json") + " --out " + path("data.json")), 0);
    const DataVector s = vectorize(data_from_json(read_json_file(m_dir / "data.json")));
    const CMatrix outer = s * s.adjoint();
    EXPECT_EQ(estimate_rank(outer, 1e-10), 1);
}

TEST_F(Cli, NonConvergedRecoverExitsThree)
{
    ASSERT_EQ(tool("synth --preset airbus18 --dims 6,6 --out " + path("data.json")), 0);
    ASSERT_EQ(tool("mask --dims 6,6 --samples 20 --seed 3 --out " + path("mask.json")), 0);
    write("cfg.json", R"({"max_inner_iter": 3, "max_outer_iter": 1})");
    EXPECT_EQ(tool("recover --data " + path("data.json") + " --mask " + path("mask.json") +
                   " --method rwtm --config " + path("cfg.json") + " --rank 2 --out " + path("rec.json")),
              3);
    EXPECT_TRUE(fs::exists(m_dir / "rec.json"));
}

TEST_F(Cli, BadInputExitsTwo)
{
    write("bad.json", "{\"dims\": {\"N\": 4,\n \"M\": }");
    EXPECT_EQ(tool("synth --scene " + path("bad.json") + " --out " + path("x.json")), 2);
    EXPECT_NE(slurp(m_dir / "stderr.txt").find("bad.json:2"), std::string::npos);

    write("empty.json", R"({"dims": {"N": 4, "M": 4}, "scatterers": []})");
    EXPECT_EQ(tool("synth --scene " + path("empty.json") + " --out " + path("x.json")), 2);
    EXPECT_EQ(tool("mask --dims 4 --out " + path("m.json")), 2);
    EXPECT_EQ(tool("mask --dims 4,4 --samples 17 --out " + path("m.json")), 2);
    EXPECT_EQ(tool(""), 2);
    EXPECT_EQ(tool("frobnicate"), 2);
    EXPECT_EQ(tool("--help"), 0);

    // data and mask dims disagree
    ASSERT_EQ(tool("synth --preset airbus18 --dims 6,6 --out " + path("data.json")), 0);
    ASSERT_EQ(tool("mask --dims 5,6 --samples 10 --out " + path("mask.json")), 0);
    EXPECT_EQ(tool("recover --data " + path("data.json") + " --mask " + path("mask.json") + " --out " +
                   path("rec.json")),
              2);

    write("cfg.json", R"({"rho": 1.0, "unknown": 2})");
    ASSERT_EQ(tool("mask --dims 6,6 --samples 10 --out " + path("mask.json")), 0);
    EXPECT_EQ(tool("recover --data " + path("data.json") + " --mask " + path("mask.json") + " --config " +
                   path("cfg.json") + " --out " + path("rec.json")),
              2);
    EXPECT_EQ(tool("recover --data " + path("data.json") + " --mask " + path("mask.json") +
                   " --method lasso --out " + path("rec.json")),
              2);
}

TEST_F(Cli, BenchWritesReproducibleReports)
{
    write("cfg.json", R"({"max_inner_iter": 40, "max_outer_iter": 1})");
    const std::string args = "bench --preset airbus18 --dims 6,6 --samples 20,30 --seeds 0-1 --method both --config " +
                             path("cfg.json") + " --rank 4 --out ";
    ASSERT_EQ(tool(args + path("a")), 0);
    ASSERT_EQ(tool(args + path("b")), 0);
    const std::string csv = slurp(m_dir / "a" / "bench.csv");
    EXPECT_EQ(csv, slurp(m_dir / "b" / "bench.csv"));
    EXPECT_EQ(slurp(m_dir / "a" / "bench.json"), slurp(m_dir / "b" / "bench.json"));
    EXPECT_EQ(line_count(csv), 1 + 2 * 2 * 2);
}

TEST_F(Cli, ReproPaperBundle)
{
    cli::ReproOptions opts;
    opts.dims         = {6, 6};
    opts.seed_count   = 2;
    opts.samples      = 30;
    opts.sweep_counts = {20, 28};
    opts.center_size  = 4;
    opts.solver       = experiment_solver_config();
    opts.solver.max_inner_iter = 15;
    opts.solver.max_outer_iter = 1;

    opts.out_dir = m_dir / "a";
    cli::repro_paper(opts);
    opts.out_dir = m_dir / "b";
    cli::repro_paper(opts);

    for (const char* name : {"fig3a.csv", "fig3b.csv", "fig3c.csv", "fig4_5.csv", "fig6.csv", "manifest.json"})
    {
        ASSERT_TRUE(fs::exists(m_dir / "a" / name)) << name;
        EXPECT_EQ(slurp(m_dir / "a" / name), slurp(m_dir / "b" / name)) << name;
    }
    const std::string fig3 = slurp(m_dir / "a" / "fig3a.csv");
    EXPECT_EQ(fig3.rfind("truth_index,fx_true,fy_true,est_index,fx_est,fy_est,pair_error,amp_abs\n", 0), 0u);
    EXPECT_EQ(line_count(fig3), 1 + 18);
    // two scenes x seeds
    EXPECT_EQ(line_count(slurp(m_dir / "a" / "fig4_5.csv")), 1 + 2 * 2);
    // methods x counts x seeds
    EXPECT_EQ(line_count(slurp(m_dir / "a" / "fig6.csv")), 1 + 2 * 2 * 2);

    const json manifest = read_json_file(m_dir / "a" / "manifest.json");
    EXPECT_EQ(manifest["seeds"], json({0, 1}));
    EXPECT_EQ(manifest["solver"]["max_inner_iter"], 15);
    EXPECT_TRUE(manifest.contains("failures"));
}

TEST_F(Cli, ReproPaperViaBinary)
{
    write("cfg.json", R"({"max_inner_iter": 10, "max_outer_iter": 0})");
    const int code = tool("repro-paper --out " + path("out") + " --dims 6,6 --samples 30 --seeds 1 --counts 24 "
                          "--center-size 4 --config " + path("cfg.json"));
    EXPECT_TRUE(code == 0 || code == 1) << code;
    EXPECT_TRUE(fs::exists(m_dir / "out" / "manifest.json"));
    EXPECT_EQ(line_count(slurp(m_dir / "out" / "fig6.csv")), 1 + 2);
}
