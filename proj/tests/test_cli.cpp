#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "phicong/cli.hpp"
#include "reference_values.hpp"

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "phicong");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = phicong::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);) {
        v.push_back(line);
    }
    return v;
}

}  // namespace

TEST_CASE("tables odd-coeffs reproduces the eight odd coefficients")
{
    const auto r = run_cli({"tables", "odd-coeffs", "--n-max", "225", "--format", "csv"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 9);
    CHECK(rows[0] == "n,a(1,n)");
    for (std::size_t i = 0; i < reference::kOddCoefficients.size(); ++i) {
        const auto& [n, c] = reference::kOddCoefficients[i];
        CHECK(rows[i + 1] == std::to_string(n) + "," + c);
    }

    const auto j = nlohmann::json::parse(run_cli({"tables", "odd-coeffs", "--format", "json"}).out);
    CHECK(j["n_max"] == 225);
    CHECK(j["odd"].size() == 8);
    CHECK(j["even_count"] == 217);
    CHECK(j["odd"][1]["coefficient"] == "10400997");

    const auto md = run_cli({"tables", "odd-coeffs"});
    CHECK(md.out.find("| 225 | 19146547947132951990683661128349583597266368489785587 |") != std::string::npos);
    CHECK(md.out.find("are even (217 coefficients)") != std::string::npos);
}

TEST_CASE("gamma table for m = 40")
{
    const auto r = run_cli({"gamma", "--m", "40", "--alpha-max", "9", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    std::vector<unsigned> expected(reference::kGamma40.begin(), reference::kGamma40.end());
    CHECK(j["gamma"].get<std::vector<unsigned>>() == expected);
    CHECK(j["tail"]["offset"] == 4);

    const auto md = run_cli({"gamma", "--m", "40", "--alpha-max", "9"}).out;
    CHECK(md.find("| γ(40,α) | 0 | 0 | 0 | 0 | 1 | 2 | 2 | 3 | 4 | 5 | ⋯ | α − 4 | ⋯ |") != std::string::npos);
    CHECK(run_cli({"tables", "gamma-40"}).out == md);
}

TEST_CASE("phi and u2 commands")
{
    const auto phi = nlohmann::json::parse(run_cli({"phi", "--m", "1", "--precision", "6"}).out);
    CHECK(phi["order"] == 1);
    CHECK(phi["precision"] == 6);
    CHECK(phi["coeffs"] == nlohmann::json::array({"1", "24", "300", "2624", "18126"}));

    const auto u2 = run_cli({"u2", "--m", "1", "--alpha", "1", "--strategy", "both", "--format", "csv"});
    CHECK(u2.code == 0);
    CHECK(u2.out == "j,d(m,j,alpha),nu2\n1,24,3\n2,2048,11\n");

    const auto u2j = nlohmann::json::parse(run_cli({"u2", "--m", "2", "--alpha", "1"}).out);
    CHECK(u2j["coeffs"]["3"] == "196608");
}

TEST_CASE("verify commands exit 0 on small grids")
{
    const auto r = run_cli({"verify", "congruence", "--m-max", "4", "--n-max", "64", "--no-wall-time"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["summary"]["failures"] == 0);
    CHECK_FALSE(j.contains("wall_seconds"));

    CHECK(run_cli({"verify", "bound", "--m-max", "3", "--alpha-max", "2", "--summary-only"}).code == 0);
    CHECK(run_cli({"verify", "support", "--m-max", "4", "--format", "markdown"}).code == 0);
    CHECK(run_cli({"verify", "parity", "--n-max", "81", "--format", "csv"}).code == 0);
    CHECK(run_cli({"verify", "identities", "--newton-m-max", "3", "--residual-w-precision", "64",
                   "--half-grid-m-max", "2", "--half-grid-w-precision", "40"})
              .code == 0);
    CHECK(run_cli({"verify", "strategies", "--m-max", "3", "--alpha-max", "2"}).code == 0);
    CHECK(run_cli({"verify", "gamma", "--m-max", "40", "--alpha-max", "9"}).code == 0);
    const auto cmp = nlohmann::json::parse(run_cli({"compare-bounds", "--m-max", "8", "--alpha-max", "1"}).out);
    CHECK(cmp["summary"]["lehner_trivial"].get<int>() > 0);
}

TEST_CASE("output is stable across runs")
{
    const std::vector<std::string> args{"verify", "bound", "--m-max", "3", "--alpha-max", "3", "--no-wall-time"};
    CHECK(run_cli(args).out == run_cli(args).out);
    const std::vector<std::string> csv{"verify", "support", "--m-max", "5", "--format", "csv", "--threads", "3"};
    CHECK(run_cli(csv).out == run_cli({"verify", "support", "--m-max", "5", "--format", "csv"}).out);
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run_cli({"gamma", "--m", "40", "--bogus"}).code == 2);
    CHECK(run_cli({"nonsense"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"verify", "congruence", "--m-max", "4"}).code == 2);
    CHECK(run_cli({"verify", "congruence", "--m-max", "8", "--n-max", "4"}).code == 2);
    CHECK(run_cli({"u2", "--m", "1", "--strategy", "sideways"}).code == 2);
    CHECK(run_cli({"phi", "--format", "yaml"}).code == 2);
    const auto r = run_cli({"tables", "odd-coeffs", "--unknown"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("direct strategy over budget is a configuration error")
{
    const auto r = run_cli({"u2", "--m", "64", "--alpha", "12", "--strategy", "direct"});
    CHECK(r.code == 2);
    CHECK(r.err.find("algebraic") != std::string::npos);
}

TEST_CASE("relative output paths resolve against the output directory variable")
{
    const auto dir = std::filesystem::temp_directory_path() / "phicong_cli_test";
    std::filesystem::create_directories(dir);
    ::setenv(phicong::cli::kOutputDirEnv, dir.c_str(), 1);
    const auto r = run_cli({"gamma", "--m", "5", "--alpha-max", "3", "--format", "csv", "-o", "g.csv"});
    ::unsetenv(phicong::cli::kOutputDirEnv);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(dir / "g.csv");
    std::stringstream content;
    content << f.rdbuf();
    CHECK(content.str() == "alpha,gamma\n0,0\n1,1\n2,2\n3,2\n");
    std::filesystem::remove_all(dir);
}

TEST_CASE("the installed binary reports exit codes")
{
    const std::string bin = PHICONG_CLI_PATH;
    CHECK(std::system((bin + " verify gamma --m-max 16 --alpha-max 6 > /dev/null").c_str()) == 0);
    const int rc = std::system((bin + " --no-such-flag > /dev/null 2>&1").c_str());
    CHECK(WIFEXITED(rc));
    CHECK(WEXITSTATUS(rc) == 2);
}
