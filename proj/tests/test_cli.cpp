#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "gtest/gtest.h"
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "qhedge/imageio.hpp"

using namespace qhedge;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qhedge_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(const std::string &args) {
        const std::string cmd = std::string(QHEDGE_CLI) + " " + args + " >" +
                                (dir_ / "stdout.txt").string() + " 2>" +
                                (dir_ / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    fs::path gray(const std::string &name, const std::vector<double> &px) {
        const std::size_t side = static_cast<std::size_t>(std::lround(std::sqrt(px.size())));
        const fs::path p = dir_ / name;
        io::save_gray(GrayImage(side, px), p);
        return p;
    }

    std::string slurp(const fs::path &p) const {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

} // namespace

TEST_F(CliTest, edges_frqi_writes_outputs_and_manifest) {
    const auto in = gray("square.pgm", oracle::rectangle_image(8, 2, 3, 3, 2));
    const auto out = dir_ / "sq";
    ASSERT_EQ(run("edges --method frqi --branch max-prob --boundary clipped " + in.string() + " " +
                  out.string()),
              0)
        << slurp(dir_ / "stderr.txt");
    for (const char *suffix : {".edges.pgm", ".h.pgm", ".v.pgm", ".manifest.json"})
        EXPECT_TRUE(fs::exists(out.string() + suffix)) << suffix;

    const auto edges = io::load_edge_map(out.string() + ".edges.pgm");
    std::set<std::size_t> got;
    for (std::size_t i = 0; i < edges.bits().size(); ++i)
        if (edges.bits()[i])
            got.insert(i);
    EXPECT_EQ(got, oracle::outer_ring(8, 2, 3, 3, 2));

    const auto j = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
    EXPECT_EQ(j["method"], "frqi");
    EXPECT_EQ(j["branch"]["policy"], "max-prob");
    // 6 white pixels of 64: P(0) = 6/64, so max-prob takes outcome 1.
    EXPECT_EQ(j["branch"]["horizontal"]["outcome"], 1);
    EXPECT_NEAR(j["branch"]["horizontal"]["probability"].get<double>(), 58.0 / 64.0, 1e-12);
    EXPECT_EQ(j["boundary"], "clipped");
    EXPECT_TRUE(j["threshold"]["horizontal"].get<double>() > 0.0);
    EXPECT_FALSE(j.contains("timing_ms"));
}

TEST_F(CliTest, constant_image_gives_empty_map) {
    const auto in = gray("flat.pgm", std::vector<double>(16, 0.5));
    ASSERT_EQ(run("edges --method qpie " + in.string() + " " + (dir_ / "flat").string()), 0);
    EXPECT_EQ(io::load_edge_map(dir_ / "flat.edges.pgm").count(), 0u);
}

TEST_F(CliTest, zero_probability_branch_exits_with_pipeline_error) {
    const auto in = gray("white.pgm", std::vector<double>(16, 1.0));
    EXPECT_EQ(run("edges --method frqi --branch forced-1 " + in.string() + " " +
                  (dir_ / "w").string()),
              3);
    EXPECT_NE(slurp(dir_ / "stderr.txt").find("measurement error"), std::string::npos);
}

TEST_F(CliTest, input_errors_exit_2) {
    EXPECT_EQ(run("edges --method nope a b"), 2);
    EXPECT_EQ(run("edges " + (dir_ / "missing.pgm").string() + " " + (dir_ / "m").string()), 2);
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("--help"), 0);
}

TEST_F(CliTest, compare_writes_traditional_and_montage) {
    const auto in = gray("sq.pgm", oracle::rectangle_image(8, 1, 1, 4, 4));
    ASSERT_EQ(run("edges --compare --timing " + in.string() + " " + (dir_ / "c").string()), 0);
    const auto trad = io::load_edge_map(dir_ / "c.traditional.pgm");
    const auto mod = io::load_edge_map(dir_ / "c.edges.pgm");
    EXPECT_NE(trad, mod);
    const auto montage = io::read_raster(dir_ / "c.montage.pgm");
    EXPECT_EQ(montage.width, 3u * 8u + 4u);
    EXPECT_EQ(montage.height, 8u);
    const auto j = nlohmann::json::parse(slurp(dir_ / "c.manifest.json"));
    EXPECT_TRUE(j.contains("timing_ms"));
    EXPECT_EQ(j["outputs"].size(), 6u);
}

TEST_F(CliTest, options_reach_the_pipeline) {
    const auto in = gray("sq.pgm", oracle::rectangle_image(8, 1, 1, 4, 4));
    ASSERT_EQ(run("edges --branch sampled --seed 7 --boundary cyclic --threshold 0.01 "
                  "--first-edge per-row --ancilla minus --thr-mode max-abs --pad crop " +
                  in.string() + " " + (dir_ / "o").string()),
              0)
        << slurp(dir_ / "stderr.txt");
    const auto j = nlohmann::json::parse(slurp(dir_ / "o.manifest.json"));
    EXPECT_EQ(j["branch"]["policy"], "sampled");
    EXPECT_EQ(j["seed"], 7);
    EXPECT_EQ(j["boundary"], "cyclic");
    EXPECT_EQ(j["first_edge"], "per-row");
    EXPECT_EQ(j["ancilla"], "minus");
    EXPECT_EQ(j["threshold"]["mode"], "max-abs");
    EXPECT_DOUBLE_EQ(j["threshold"]["horizontal"].get<double>(), 0.01);
    EXPECT_EQ(j["image"]["fit"], "crop");
}

TEST_F(CliTest, encode_prints_amplitudes) {
    const auto black = gray("black.pgm", {0, 0, 0, 0});
    ASSERT_EQ(run("encode --method frqi " + black.string()), 0);
    const std::string frqi = slurp(dir_ / "stdout.txt");
    EXPECT_EQ(frqi, "index,bitstring,real,imag\n"
                    "4,100,0.5,0\n5,101,0.5,0\n6,110,0.5,0\n7,111,0.5,0\n");

    const auto diag = gray("diag.pgm", {1, 0, 0, 1});
    ASSERT_EQ(run("encode --method qpie " + diag.string()), 0);
    EXPECT_EQ(slurp(dir_ / "stdout.txt"),
              "index,bitstring,real,imag\n0,00,0.707106781187,0\n3,11,0.707106781187,0\n");

    ASSERT_EQ(run("encode --method qpie --all --out " + (dir_ / "a.csv").string() + " " +
                  diag.string()),
              0);
    EXPECT_EQ(slurp(dir_ / "a.csv"), "index,bitstring,real,imag\n0,00,0.707106781187,0\n"
                                     "1,01,0,0\n2,10,0,0\n3,11,0.707106781187,0\n");
}

TEST_F(CliTest, encode_respects_qubit_cap) {
    const auto small = gray("n64.pgm", std::vector<double>(64 * 64, 0.5));
    EXPECT_EQ(run("encode --method neqr " + small.string()), 0);
    const auto big = gray("n512.pgm", std::vector<double>(512 * 512, 0.5));
    EXPECT_EQ(run("encode --method neqr " + big.string()), 2);
    EXPECT_NE(slurp(dir_ / "stderr.txt").find("limit 24"), std::string::npos);
}
