#include "rwtail/cli.hpp"
#include "rwtail/error.hpp"
#include "rwtail/scenario_io.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace rwtail;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace {

const std::string kScenarios = std::string(RWTAIL_SOURCE_DIR) + "/scenarios/";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream o;
    std::ostringstream e;
    const int code = cli::run(args, o, e);
    return {code, o.str(), e.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

const char* kMinimal = R"({"n": 1, "k": 1,
  "marginals": [{"family": "pareto", "params": {"alpha": 2, "scale": 1}}],
  "correlation": "independent",
  "weights": [{"kind": "uniform", "params": {"omega": 1}}]})";

} // namespace

TEST_CASE("shipped templates validate") {
    for (const char* f : {"frechet_pareto.json", "lcr_lognormal.json"}) {
        const auto r = run({"validate-scenario", "--scenario", kScenarios + f});
        CHECK(r.code == 0);
        CHECK_THAT(r.out, StartsWith("ok:"));
    }
    const auto lcr = load_scenario(kScenarios + "lcr_lognormal.json");
    CHECK(lcr.scenario.n() == 5);
    CHECK(lcr.scenario.k() == 3);
    CHECK_FALSE(lcr.scenario.independent_risks());
}

TEST_CASE("approx prints one row") {
    const auto r = run({"approx", "--scenario", kScenarios + "frechet_pareto.json", "--t", "100"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row, extra;
    std::getline(in, header);
    std::getline(in, row);
    CHECK_THAT(header, StartsWith("t,approx,formula"));
    CHECK_THAT(row, StartsWith("1.000000000e+02,1.000000000e-04,frechet_main"));
    CHECK_FALSE(std::getline(in, extra));
}

TEST_CASE("compare writes the documented CSV and is byte-reproducible") {
    const std::string out = (std::filesystem::temp_directory_path() / "rwtail_curve.csv").string();
    const std::vector<std::string> args{"compare", "--scenario", kScenarios + "frechet_pareto.json", "--t-grid",
                                        "1e2:1e6:10", "--method", "conditional", "--samples", "100000", "--seed",
                                        "42", "--workers", "4", "--out", out};
    REQUIRE(run(args).code == 0);
    std::ifstream f(out);
    std::stringstream first;
    first << f.rdbuf();
    REQUIRE(run(args).code == 0);
    std::ifstream g(out);
    std::stringstream second;
    second << g.rdbuf();
    CHECK(first.str() == second.str());
    std::istringstream lines(first.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,estimate,stderr,ci_lo,ci_hi,approx,ratio,ratio_ci_lo,ratio_ci_hi,caveats");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) {
        ++rows;
    }
    CHECK(rows == 10);
    std::filesystem::remove(out);
}

TEST_CASE("log-space switches estimate and approx columns") {
    const auto r = run({"compare", "--scenario", kScenarios + "frechet_pareto.json", "--t", "100", "--method", "is",
                        "--samples", "20000", "--log-space"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring(",-9.210340372e+00,"));
}

TEST_CASE("eta subcommand") {
    const auto r = run({"eta", "--rho", "0.5"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, StartsWith("0.866025"));
    CHECK(run({"eta", "--rho", "1.5"}).code == 2);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 1);
    CHECK(run({"approx", "--bogus"}).code == 1);
    const auto bad = run({"frobnicate"});
    CHECK(bad.code == 1);
    CHECK_THAT(bad.err, ContainsSubstring("Usage"));
    CHECK(run({"approx", "--scenario", "/nonexistent.json", "--t", "10"}).code == 2);
    CHECK(run({"simulate", "--scenario", kScenarios + "frechet_pareto.json", "--t", "10", "--method", "crude",
               "--samples", "10"})
              .code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("unknown keys and invalid models are rejected with the same message everywhere") {
    const std::string extra = write_temp("rwtail_extra.json", std::string(kMinimal).insert(1, "\"colour\": 1, "));
    const auto v = run({"validate-scenario", "--scenario", extra});
    const auto a = run({"approx", "--scenario", extra, "--t", "100"});
    CHECK(v.code == 2);
    CHECK(a.code == 2);
    CHECK(v.err == a.err);
    CHECK_THAT(v.err, ContainsSubstring("colour"));

    std::string heavier = R"({"n": 2, "k": 1,
      "marginals": [{"family": "pareto", "params": {"alpha": 2, "scale": 1}},
                    {"family": "pareto", "params": {"alpha": 1, "scale": 1}}],
      "weights": [{"kind": "uniform", "params": {}}]})";
    CHECK(run({"validate-scenario", "--scenario", write_temp("rwtail_heavy.json", heavier)}).code == 2);
    CHECK_THROWS_AS(parse_scenario(R"({"n": 2, "k": 1, "marginals": [], "weights": []})"), ValidationError);
    CHECK_THROWS_AS(parse_scenario("not json"), ValidationError);
    CHECK_THROWS_AS(parse_scenario(std::string(kMinimal).replace(std::string(kMinimal).find("uniform"), 7, "gamma")),
                    ValidationError);
}

TEST_CASE("scenario diagnostics block") {
    const auto sf = parse_scenario(R"({"n": 2, "k": 1,
      "marginals": [{"family": "lognormal", "params": {"mu": 0, "sigma": 1}},
                    {"family": "lognormal", "params": {"mu": 0, "sigma": 1}}],
      "correlation": [[1, 0.2], [0.2, 1]],
      "weights": [{"kind": "model_a", "params": {"omega": 1, "p": 0.5, "eta": 0.5}}],
      "diagnostics": {"t_grid": {"from": 10, "to": 1000, "points": 3},
                      "L": {"default": 2, "pairs": [{"i": 1, "j": 0, "L": 0.5}]},
                      "x_values": [1, 3]}})");
    REQUIRE(sf.diagnostics.has_value());
    CHECK(sf.diagnostics->t_grid.size() == 3);
    CHECK(sf.diagnostics->L(0, 1) == 0.5);
    CHECK(sf.diagnostics->L_default == 2.0);
    CHECK(sf.diagnostics->x_values == std::vector<double>{1, 3});
}

TEST_CASE("check-conditions and risk subcommands") {
    const auto c = run({"check-conditions", "--scenario", kScenarios + "frechet_pareto.json"});
    CHECK(c.code == 0);
    CHECK_THAT(c.out, StartsWith("condition,i,j,x,t,ratio,verdict"));
    CHECK_THAT(c.err, ContainsSubstring("consistent-with-→0"));

    const auto r = run({"risk", "--scenario", kScenarios + "lcr_lognormal.json", "--p", "0.99,0.999", "--samples",
                        "20000", "--seed", "1", "--quiet"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("first-order ES≈VaR (Gumbel MDA)"));
    const auto f = run({"risk", "--scenario", kScenarios + "frechet_pareto.json", "--p", "0.999"});
    CHECK(f.code == 0);
    const auto w = run({"risk", "--scenario", kScenarios + "frechet_pareto.json", "--p", "0.9"});
    CHECK_THAT(w.err, ContainsSubstring("guard"));
}

TEST_CASE("simulate reports estimator metadata") {
    const auto r = run({"simulate", "--scenario", kScenarios + "frechet_pareto.json", "--t", "50", "--method", "is",
                        "--samples", "10000", "--seed", "3", "--workers", "2"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring(",is,3,2,"));
}
