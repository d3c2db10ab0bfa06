#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "equitheta/cli.hpp"

using equitheta::cli::run_cli;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "equitheta");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
    auto p = std::filesystem::temp_directory_path() / ("equitheta_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("theta reports the worked example") {
    const auto r = run({"theta", "--q", "3", "--m", "t", "--s0", "inf,t", "--t0", "t+1"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    const auto& by = j["theta"]["by_element"];
    CHECK(by["1"] == json::array({1, -2}));
    CHECK(by["g"] == json::array({0, 1}));
    const auto text = run({"theta", "--q", "3", "--m", "t", "--s0", "inf,t", "--t0", "t+1", "--format", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("1           1         -2") != std::string::npos);
    CHECK(text.out.find("g           0         1") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"theta", "--q", "3", "--m", "t", "--s0", "t", "--t0", "t+1"}).code == 1);  // no infinity
    const auto missing = run({"theta", "--q", "3", "--m", "t", "--s0", "t", "--t0", "t+1"});
    CHECK(missing.err.find("infinite place") != std::string::npos);
    CHECK(run({"theta", "--q", "6", "--m", "t"}).code == 1);
    CHECK(run({"theta", "--q", "3", "--m", "t", "--format", "yaml"}).code == 1);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({"theta", "--q", "3", "--m", "t^2", "--s0", "inf,t", "--t0", "t+1", "--dmax", "1"}).code == 2);
    CHECK(run({"verify", "--q", "3", "--m", "t", "--n", "2..4"}).code == 0);
    CHECK(run({"verify", "--kind", "constant_field", "--q", "2", "--r", "2"}).code == 0);
    CHECK(run({"verify", "--q", "3", "--m", "t", "--corrupt-frobenius", "t+2"}).code == 3);
    CHECK(run({"cs-report", "--q", "3", "--m", "t", "--t0", "t+1"}).code == 1);  // one witness
}

TEST_CASE("cs-report") {
    const auto r = run({"cs-report", "--q", "3", "--m", "t", "--n", "2", "--ell", "2", "--t0", "t+1;t+2"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(r.out.find("prediction") != std::string::npos);
    CHECK(j.dump().find("<1 + g, 2*g>") != std::string::npos);
    const auto affine =
        run({"cs-report", "--kind", "constant_field", "--q", "3", "--r", "1", "--n", "2..4", "--ell", "2,5",
             "--t0", "t;t+1;t+2"});
    REQUIRE(affine.code == 0);
    for (const auto& e : json::parse(affine.out)["report"]["entries"]) CHECK(e["unit"] == true);
}

TEST_CASE("fitlab is deterministic and handles N = 0") {
    const std::vector<std::string> args{"fitlab", "--seed", "42", "--count", "20", "--group", "2", "--ell", "2",
                                        "--k", "3"};
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto z = run({"fitlab", "--seed", "1", "--count", "0"});
    CHECK(z.code == 0);
    CHECK(z.err.find("warning") != std::string::npos);
}

TEST_CASE("config files and atomic output") {
    const auto dir = temp_dir();
    const auto cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"kind": "carlitz", "q": 3, "m": "t", "S0": ["inf", [0, 1]], "T0": [[1, 1]]})";
    const auto out = dir / "theta.json";
    const auto r = run({"theta", "--config", cfg.string(), "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    const auto j = json::parse(in);
    CHECK(j["theta"]["by_element"]["g"] == json::array({0, 1}));
    CHECK_FALSE(std::filesystem::exists(out.string() + ".tmp"));
    // flags override the file
    const auto o = run({"theta", "--config", cfg.string(), "--t0", "t+2"});
    REQUIRE(o.code == 0);
    CHECK(json::parse(o.out)["theta"]["by_element"] != j["theta"]["by_element"]);
    // a failing run leaves no report behind
    const auto bad = dir / "bad.json";
    CHECK(run({"theta", "--config", cfg.string(), "--dmax", "0", "--guard", "0", "--out", bad.string()}).code == 1);
    CHECK_FALSE(std::filesystem::exists(bad));
    std::filesystem::remove_all(dir);
}
