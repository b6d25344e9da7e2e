#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

#include "dmc/cli.hpp"

using namespace dmc;

namespace {

std::string data(const char* f) { return std::string(DMC_DATA_DIR) + "/" + f; }

struct Result {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "dmc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

int run_binary(const std::string& args)
{
    const std::string cmd = std::string(DMC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, As4dimFourDimensionalCheckFails)
{
    const Result r = run({"as-check", "--body", data("as4dim.json"), "--J", "1,2,3,4"});
    EXPECT_EQ(r.code, 1);
    const Json j = r.json();
    EXPECT_FALSE(j["all_hold"].get<bool>());
    EXPECT_FALSE(j["checks"][0]["verdict"].get<bool>());
    EXPECT_TRUE(j["checks"][0]["exact"].get<bool>());
    EXPECT_EQ(j["checks"][0]["J"], Json::parse("[1,2,3,4]"));
}

TEST(Cli, As4dimPairsHold)
{
    std::vector<std::string> args{"as-check", "--body", data("as4dim.json")};
    for (const char* J : {"1,2", "1,3", "1,4", "2,3", "2,4", "3,4"}) {
        args.push_back("--J");
        args.push_back(J);
    }
    const Result r = run(args);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["checks"].size(), 6u);
    EXPECT_TRUE(r.json()["all_hold"].get<bool>());
}

TEST(Cli, ZonoidEquivalenceOfSplitTwin)
{
    const Result r = run({"zonoid-equiv", "--xi", data("twin_xi.json"), "--eta", data("twin_eta.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.json()["verdict"].get<bool>());

    const Result f = run({"zonoid-equiv", "--xi", data("diamond_law.json"), "--eta", data("cross_law.json")});
    EXPECT_EQ(f.code, 1);
    EXPECT_EQ(f.json()["witness"], Json::parse("[1.0,0.0]"));
    EXPECT_NEAR(f.json()["witness_values"][1].get<double>(), std::sqrt(0.5), 1e-15);

    const Result m = run({"moment-oracle", "--xi", data("twin_xi.json"), "--eta", data("twin_eta.json")});
    EXPECT_EQ(m.code, 0);
    EXPECT_TRUE(m.json()["verdict"].get<bool>());
}

TEST(Cli, LaplaceVerifyTwoAtomSpectral)
{
    const Result r = run({"laplace-verify", "--dpball", data("dpball_two_atom.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_EQ(j["seed"].get<std::uint64_t>(), cli::kDefaultSeed);
    EXPECT_EQ(j["n_samples"].get<std::size_t>(), 200000u);
    EXPECT_EQ(j["grid"].size(), 25u);
    EXPECT_LE(j["max_abs_dev"].get<double>(), 0.005);
    EXPECT_EQ(j["tolerance"].get<double>(), 0.005);
}

TEST(Cli, CdfVerifySingleAtom)
{
    const Result r = run({"cdf-verify", "--dpball", data("dinf_single_atom.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["grid"].size(), 9u);
    EXPECT_LE(r.json()["max_abs_dev"].get<double>(), 0.01);
}

TEST(Cli, DecisionExitCodes)
{
    // the square is unconditional, hence not D-universal in the plane
    EXPECT_EQ(run({"d-universal", "--body", data("square_zonotope.json")}).code, 1);
    EXPECT_EQ(run({"d-universal", "--body", data("hexagon.json")}).code, 1);
    const Result u = run({"d-universal", "--body", data("skew_zonotope.json")});
    EXPECT_EQ(u.code, 0) << u.out << u.err;
    EXPECT_EQ(u.json()["status"], "d-universal");
}

TEST(Cli, InputErrorsExitTwo)
{
    EXPECT_EQ(run({"as-check", "--body", data("missing.json")}).code, 2);
    EXPECT_EQ(run({"as-check"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"as-check", "--body", data("as4dim.json"), "--J", "1,9"}).code, 2);
    EXPECT_EQ(run({"as-check", "--body", data("as4dim.json"), "--J", "1,x"}).code, 2);
    EXPECT_EQ(run({"stable-sample", "--dpball", data("dpball_two_atom.json"), "--seed", "abc"}).code, 2);
    EXPECT_EQ(run({"support-eval", "--body", data("cube3.json"), "--u", "1,2"}).code, 2);
    EXPECT_EQ(run({"rerepresent", "--dpball", data("dpball_two_atom.json"), "--r", "1.5"}).code, 2);

    const std::string bad = ::testing::TempDir() + "dmc_cli_bad.json";
    {
        std::ofstream o(bad);
        o << R"({"kind":"zonotope","dim":2,"generators":[[1,0],[0]]})";
    }
    const Result r = run({"as-check", "--body", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(bad + ": $.generators[1]: expected 2 entries"), std::string::npos) << r.err;
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, ReproducibleOutput)
{
    const std::vector<std::vector<std::string>> cmds{
        {"stable-sample", "--dpball", data("dpball_two_atom.json"), "--count", "200"},
        {"maxstable-sample", "--dpball", data("dinf_single_atom.json"), "--count", "200", "--seed", "0x2a"},
        {"laplace-verify", "--dpball", data("dpball_two_atom.json"), "--count", "5000"},
        {"inject-probe", "--body", data("cube3.json"), "--generic-atoms", "6"},
        {"as-check", "--body", data("as4dim.json"), "--mode", "sampled", "--J", "1,2"},
    };
    for (const auto& c : cmds) {
        const Result a = run(c), b = run(c);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out) << c[0];
    }
    auto other = cmds[0];
    other.insert(other.end(), {"--seed", "7"});
    EXPECT_NE(run(cmds[0]).out, run(other).out);
}

TEST(Cli, SampleCsvCarriesSeed)
{
    const Result r = run({"stable-sample", "--dpball", data("dpball_two_atom.json"), "--count", "3", "--seed", "42"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# command=stable-sample seed=42");
    std::getline(in, line);
    EXPECT_EQ(line, "x1,x2");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 3);
}

TEST(Cli, JsonOutputRoundTrips)
{
    const std::vector<std::vector<std::string>> cmds{
        {"support-eval", "--body", data("segment_sum.json"), "--u", "1,2", "--u", "-1,0.5"},
        {"k-transform", "--body", data("cube3.json"), "--measure", data("measure_even.json"), "--u", "1,0,0"},
        {"mixed-volume", "--L", data("hexagon.json"), "--body", data("square_zonotope.json"), "--u", "1,1"},
        {"dp-eval", "--dpball", data("dpball_two_atom.json"), "--u", "1,-2", "--beta", "0.5"},
        {"g-transform", "--body", data("square_zonotope.json"), "--family", data("family_two_maps.json"), "--u", "1,2"},
        {"uncond-universal", "--body", data("rotated_square.json")},
        {"rerepresent", "--dpball", data("d1_cross.json"), "--r", "2"},
    };
    for (const auto& c : cmds) {
        const Result r = run(c);
        ASSERT_EQ(r.code, 0) << c[0] << ": " << r.err;
        EXPECT_EQ(r.json().dump(2) + "\n", r.out) << c[0];
        EXPECT_EQ(r.json()["command"], c[0]);
        EXPECT_EQ(r.json()["seed"].get<std::uint64_t>(), cli::kDefaultSeed);
    }
    // the refit ball parses back as a D_p-ball
    const Json fitted = run(cmds.back()).json()["fitted"];
    const DpBall l = parse_dpball(JsonNode(fitted, "$"));
    EXPECT_EQ(dpball_json(l), fitted);
}

TEST(Cli, SupportEvalValues)
{
    const Result r = run({"support-eval", "--body", data("square_zonotope.json"), "--u", "1,-2"});
    EXPECT_EQ(r.json()["values"][0]["value"].get<double>(), 3.0);
    const Result p = run({"k-transform", "--body", data("cube3.json"), "--measure", data("measure_even.json"), "--u", "1,0,0"});
    EXPECT_NEAR(p.json()["values"][0]["value"].get<double>(), 0.6, 1e-15);
}

TEST(Cli, OutFileAndCsvFormat)
{
    const std::string f = ::testing::TempDir() + "dmc_cli_out.csv";
    const Result r = run({"support-eval", "--body", data("square_zonotope.json"), "--u", "1,-2", "--format", "csv", "--out", f});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "# command=support-eval seed=53670\nu1,u2,support\n1,-2,3\n");
}

TEST(Cli, DumpGrid)
{
    const std::string f = ::testing::TempDir() + "dmc_cli_grid.csv";
    const Result r = run({"inject-probe", "--body", data("cube3.json"), "--generic-atoms", "4", "--grid", "20", "--dump-grid", f});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(run({"as-check", "--body", data("as4dim.json"), "--dump-grid", f}).code, 2);
    std::ifstream in(f);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_GE(rows, 21);
}

TEST(Cli, InjectProbeSummary)
{
    const Result r = run({"inject-probe", "--body", data("cube3.json"), "--generic-atoms", "6"});
    ASSERT_EQ(r.code, 0);
    const Json j = r.json();
    EXPECT_EQ(j["rank"].get<int>(), 3);
    EXPECT_EQ(j["kernel_dim"].get<int>(), 3);
    for (const char* k : {"sigma_max", "sigma_min", "residual", "rank_tol"}) EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_LE(j["residual"].get<double>(), 1e-6);
}

TEST(CliBinary, ExitCodes)
{
    EXPECT_EQ(run_binary("as-check --body " + data("as4dim.json") + " --J 1,2,3,4"), 1);
    EXPECT_EQ(run_binary("zonoid-equiv --xi " + data("twin_xi.json") + " --eta " + data("twin_eta.json")), 0);
    EXPECT_EQ(run_binary("as-check --body " + data("nonexistent.json")), 2);
    EXPECT_EQ(run_binary("--help"), 0);
}
