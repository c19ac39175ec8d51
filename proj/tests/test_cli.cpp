#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "steiner/cli/commands.hpp"
#include "steiner/cli/instance_io.hpp"
#include "steiner/cli/svg.hpp"
#include "steiner/errors.hpp"
#include "steiner/generators.hpp"
#include "steiner/geometry.hpp"

namespace fs = std::filesystem;
using namespace steiner;
using steiner::cli::run;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Outcome invoke(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"steiner"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : storage) argv.push_back(s.c_str());
    std::ostringstream out, err;
    Outcome o;
    o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("steiner_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_F(CliTest, SolveSquare) {
    const std::string in = write("square.pts", "# unit square\n2\n4\n0 0\n1 0\n1 1\n0 1\n");
    const Outcome o = invoke({"solve", in});
    ASSERT_EQ(o.code, cli::kExitPass) << o.err;
    const auto r = o.json();
    EXPECT_NEAR(r["solution"]["length"].get<double>(), 1.0 + std::sqrt(3.0), 1e-9);
    EXPECT_EQ(r["solution"]["steiner_points"].get<int>(), 2);
    EXPECT_NEAR(r["mst_length"].get<double>(), 3.0, 1e-12);
    EXPECT_TRUE(r["pass"].get<bool>());
    EXPECT_FALSE(r.contains("wall_seconds"));
    for (const auto& v : r["verdicts"]) EXPECT_NE(v["verdict"], "FAIL") << v.dump();
}

TEST_F(CliTest, TimingIsOptIn) {
    const std::string in = write("tri.pts", "2\n3\n0 0\n1 0\n0 1\n");
    const Outcome o = invoke({"--timing", "solve", in});
    ASSERT_EQ(o.code, cli::kExitPass) << o.err;
    EXPECT_TRUE(o.json().contains("wall_seconds"));
}

TEST_F(CliTest, TwoPointSvgHasOneEdge) {
    const std::string in = write("two.pts", "2\n2\n0 0\n3 4\n");
    const std::string svg = path("two.svg");
    const Outcome o = invoke({"solve", in, "--svg", svg});
    ASSERT_EQ(o.code, cli::kExitPass) << o.err;
    EXPECT_NEAR(o.json()["solution"]["length"].get<double>(), 5.0, 1e-12);
    const std::string text = slurp(svg);
    EXPECT_EQ(count_of(text, "<line"), 1u);
    EXPECT_EQ(count_of(text, "class=\"terminal\""), 2u);
    EXPECT_EQ(count_of(text, "class=\"branch\""), 0u);
}

TEST_F(CliTest, SvgIsWellFormed) {
    const std::string in = write("square.pts", "2\n4\n0 0\n1 0\n1 1\n0 1\n");
    const std::string svg = path("square.svg");
    ASSERT_EQ(invoke({"solve", in, "--svg", svg}).code, cli::kExitPass);
    const std::string text = slurp(svg);
    EXPECT_NE(text.find("<svg"), std::string::npos);
    EXPECT_NE(text.find("</svg>"), std::string::npos);
    EXPECT_EQ(count_of(text, "<line"), 5u);
    EXPECT_EQ(count_of(text, "class=\"terminal\""), 4u);
    EXPECT_EQ(count_of(text, "class=\"branch\""), 2u);
    EXPECT_EQ(count_of(text, "<svg"), count_of(text, "</svg>"));
}

TEST_F(CliTest, SvgRejectsSpace) {
    const std::string in = write("tet.pts", "3\n4\n0 0 0\n1 1 0\n1 0 1\n0 1 1\n");
    EXPECT_EQ(invoke({"solve", in, "--svg", path("x.svg")}).code, cli::kExitUnsupported);
    EXPECT_THROW(cli::render_svg(EmbeddedForest(3), {}), UnsupportedError);
}

TEST_F(CliTest, MalformedInputIsParseError) {
    const std::string bad_token = write("bad.pts", "2\n3\n0 0\n1 x\n0 1\n");
    Outcome o = invoke({"solve", bad_token});
    EXPECT_EQ(o.code, cli::kExitParse);
    EXPECT_NE(o.err.find("line 4"), std::string::npos) << o.err;

    EXPECT_EQ(invoke({"solve", write("short.pts", "2\n3\n0 0\n1 0\n")}).code, cli::kExitParse);
    EXPECT_EQ(invoke({"solve", write("extra.pts", "2\n2\n0 0\n1 0\n5\n")}).code, cli::kExitParse);
    EXPECT_EQ(invoke({"solve", write("dup.pts", "2\n2\n0 0\n0 0\n")}).code, cli::kExitParse);
    EXPECT_EQ(invoke({"solve", path("missing.pts")}).code, cli::kExitParse);
    EXPECT_EQ(invoke({"solve"}).code, cli::kExitParse);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitParse);
}

TEST_F(CliTest, TooManyTerminalsIsUnsupported) {
    const Instance big = random_ball_instance(2, 11, 5);
    const std::string in = write("big.pts", cli::format_pts(big));
    EXPECT_EQ(invoke({"solve", in}).code, cli::kExitUnsupported);
}

TEST_F(CliTest, AnalyzeBallWithTerminalIsPrecondition) {
    const std::string in = write("square.pts", "2\n4\n0 0\n1 0\n1 1\n0 1\n");
    EXPECT_EQ(invoke({"analyze", in, "--center", "0.5,0.5", "--scale", "2"}).code, cli::kExitPrecondition);
    EXPECT_EQ(invoke({"analyze", in, "--center", "0.5,0.5", "--rho", "1.5"}).code, cli::kExitPrecondition);
}

TEST_F(CliTest, AnalyzeSpaceBounds) {
    const std::string in = write("t3.pts", "3\n4\n1 0 0\n-1 0 0\n0 1 0\n0 -1 0.2\n");
    const Outcome o = invoke({"analyze", in, "--center", "0,0,0.1", "--rho", "0.5"});
    ASSERT_EQ(o.code, cli::kExitPass) << o.err;
    const auto r = o.json();
    EXPECT_DOUBLE_EQ(r["verdicts"][0]["bound"].get<double>(), 384.0);
    EXPECT_DOUBLE_EQ(r["verdicts"][1]["bound"].get<double>(), 147456.0);
    EXPECT_FALSE(r.contains("branched_components"));
}

TEST_F(CliTest, AnalyzePlanarBranched) {
    const std::string in = write("square.pts", "2\n4\n0 0\n1 0\n1 1\n0 1\n");
    const Outcome o = invoke({"analyze", in, "--center", "0.5,0.5"});
    ASSERT_EQ(o.code, cli::kExitPass) << o.err;
    const auto r = o.json();
    ASSERT_TRUE(r.contains("branched_components"));
    // Uniform grid of 64 radii plus zero and the critical radii of the tree.
    EXPECT_GE(r["profile"]["radii"].size(), 65u);
    EXPECT_EQ(r["profile"]["radii"].size(), r["profile"]["lengths"].size());
    EXPECT_TRUE(r["pass"].get<bool>());
}

TEST_F(CliTest, UnsupportedRequests) {
    EXPECT_EQ(invoke({"pathology", "--stages", "13"}).code, cli::kExitUnsupported);
    EXPECT_EQ(invoke({"sphere-connect", "--dim", "2"}).code, cli::kExitUnsupported);
    EXPECT_EQ(invoke({"generate", "klein-bottle"}).code, cli::kExitParse);
}

TEST_F(CliTest, GenerateHypercube) {
    const std::string report = path("cube.json");
    const Outcome o = invoke({"generate", "hypercube", "--dim", "3", "--report", report});
    ASSERT_EQ(o.code, cli::kExitPass) << o.err;
    std::istringstream in(o.out);
    const Instance cube = cli::parse_pts(in);
    EXPECT_EQ(cube.size(), 8u);
    EXPECT_EQ(cube.dim(), 3u);
    const auto r = nlohmann::json::parse(slurp(report));
    EXPECT_NEAR(r["mst_length"].get<double>(), 14.0, 1e-12);
    EXPECT_NEAR(r["lower_bound"].get<double>(), 14.0 / std::sqrt(3.0), 1e-6);
    EXPECT_EQ(r["verdicts"][0]["verdict"], "PASS");
}

TEST_F(CliTest, GenerateCocircular) {
    const Outcome o = invoke({"generate", "cocircular", "--n", "6", "--radius", "2", "--seed", "9"});
    ASSERT_EQ(o.code, cli::kExitPass) << o.err;
    std::istringstream in(o.out);
    const Instance inst = cli::parse_pts(in);
    ASSERT_EQ(inst.size(), 6u);
    std::vector<double> angles;
    for (const Point& p : inst.terminals()) {
        EXPECT_NEAR(p.norm(), 2.0, 1e-12);
        angles.push_back(std::atan2(p[1], p[0]));
    }
    std::sort(angles.begin(), angles.end());
    int long_chords = 0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double gap = i + 1 < angles.size() ? angles[i + 1] - angles[i] : angles.front() + 2.0 * kPi - angles.back();
        EXPECT_GE(gap, 0.05 - 1e-12);
        if (2.0 * 2.0 * std::sin(gap / 2.0) > 2.0 + 1e-12) ++long_chords;
    }
    EXPECT_LE(long_chords, 1);

    const std::string pts = write("c.pts", o.out);
    const auto r = invoke({"solve", pts}).json();
    EXPECT_EQ(r["solution"]["steiner_points"].get<int>(), 0);
}

TEST_F(CliTest, GeneratorsAreReproducible) {
    const Outcome a = invoke({"generate", "random-ball", "--dim", "3", "--n", "7", "--seed", "42"});
    const Outcome b = invoke({"generate", "random-ball", "--dim", "3", "--n", "7", "--seed", "42"});
    const Outcome c = invoke({"generate", "random-ball", "--dim", "3", "--n", "7", "--seed", "43"});
    ASSERT_EQ(a.code, cli::kExitPass);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
    std::istringstream in(a.out);
    const Instance ball = cli::parse_pts(in);
    for (const Point& p : ball.terminals()) EXPECT_LE(p.norm(), 1.0 + 1e-12);

    const Outcome s = invoke({"generate", "sphere", "--dim", "4", "--n", "5", "--seed", "1"});
    std::istringstream sphere_in(s.out);
    const Instance sphere = cli::parse_pts(sphere_in);
    for (const Point& p : sphere.terminals()) EXPECT_NEAR(p.norm(), 1.0, 1e-12);
}

TEST_F(CliTest, ReportsAreDeterministic) {
    const Instance inst = random_ball_instance(2, 7, 17);
    const std::string in = write("r.pts", cli::format_pts(inst));
    const Outcome one = invoke({"solve", in, "--threads", "1", "--audit"});
    const Outcome again = invoke({"solve", in, "--threads", "1", "--audit"});
    const Outcome many = invoke({"solve", in, "--threads", "4", "--audit"});
    ASSERT_EQ(one.code, cli::kExitPass) << one.err;
    EXPECT_EQ(one.out, again.out);
    EXPECT_EQ(one.out, many.out);

    const Outcome s1 = invoke({"sphere-connect", "--t", "50", "--seed", "3"});
    const Outcome s2 = invoke({"sphere-connect", "--t", "50", "--seed", "3"});
    EXPECT_EQ(s1.out, s2.out);
}

TEST_F(CliTest, RoundTripPreservesDigest) {
    const Instance inst = random_ball_instance(3, 6, 8);
    const std::string text = cli::format_pts(inst, "round trip");
    std::istringstream in(text);
    const Instance back = cli::parse_pts(in);
    ASSERT_EQ(back.size(), inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i)
        for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(back.terminals()[i][k], inst.terminals()[i][k]);
    EXPECT_EQ(cli::format_pts(back), cli::format_pts(inst));
}

TEST_F(CliTest, PathologyFirstStagesCertified) {
    const std::string dir = path("svg");
    fs::create_directories(dir);
    const Outcome o = invoke({"pathology", "--stages", "1", "--svg-dir", dir});
    ASSERT_EQ(o.code, cli::kExitPass) << o.err;
    const auto r = o.json();
    ASSERT_EQ(r["stages"].size(), 2u);
    for (const auto& st : r["stages"]) {
        EXPECT_EQ(st["certification"], "exact") << st.dump();
        EXPECT_GT(st["delta"].get<double>(), 0.0);
    }
    EXPECT_TRUE(fs::exists(fs::path(dir) / "stage-0.svg"));
    EXPECT_TRUE(fs::exists(fs::path(dir) / "stage-1.svg"));
}

TEST_F(CliTest, SphereConnect) {
    const Outcome o = invoke({"sphere-connect", "--dim", "3", "--t", "100", "--seed", "3"});
    ASSERT_EQ(o.code, cli::kExitPass) << o.err;
    const auto r = o.json();
    EXPECT_LE(r["length"].get<double>(), r["length_bound"].get<double>());
    EXPECT_NEAR(r["length_bound"].get<double>(), 77.7, 0.05);
}

TEST_F(CliTest, ExecutableExitCodes) {
    auto status = [&](const std::string& args) {
        const int raw = std::system((std::string(STEINER_TOOL) + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    const std::string good = write("tri.pts", "2\n3\n0 0\n1 0\n0 1\n");
    const std::string bad = write("bad.pts", "2\nthree\n");
    EXPECT_EQ(status("solve " + good), 0);
    EXPECT_EQ(status("solve " + bad), 2);
    EXPECT_EQ(status("sphere-connect --dim 2"), 4);
    EXPECT_EQ(status("--help"), 0);
}
