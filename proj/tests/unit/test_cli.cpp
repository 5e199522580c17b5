#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hodge/cli.hpp"
#include "hodge/common.hpp"
#include "hodge/report.hpp"
#include "hodge/suite.hpp"

using namespace hodge;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hodge_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int dispatch(std::vector<std::string> args) {
  args.insert(args.begin(), "hodge-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("stable json formatting") {
    CHECK(report::to_stable_json(json{{"b", 1}, {"a", 0.5}}) == "{\n  \"a\": 0.5,\n  \"b\": 1\n}\n");
    CHECK(report::format_double(0.1) == "0.10000000000000001");
    CHECK(report::format_double(2.0) == "2.0");
    CHECK(report::format_double(std::nan("")) == "null");
  }

  TEST_CASE("csv escaping") {
    CHECK(report::csv_escape("plain") == "plain");
    CHECK(report::csv_escape("a,b") == "\"a,b\"");
    CHECK(report::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    report::Table t{{"x", "y"}, {}};
    t.add({"1", "a,b"});
    CHECK(t.to_csv() == "x,y\n1,\"a,b\"\n");
  }

  TEST_CASE("config resolution layers defaults, file and flags") {
    const auto c = cli::resolve_config("dims", json{{"n", 4}}, json{{"g", 3}});
    CHECK(c.parameters["n"] == 4);
    CHECK(c.parameters["g"] == 3);
    const auto echoed = cli::resolve_config("dims", c.to_json(), nullptr);
    CHECK(echoed.parameters == c.parameters);
    CHECK_THROWS_AS(cli::resolve_config("dims", json{{"bogus", 1}}, nullptr), ValidationError);
    CHECK_THROWS_AS(cli::resolve_config("dims", json{{"n", "four"}}, nullptr), ValidationError);
    CHECK_THROWS_AS(cli::resolve_config("hn-verify", c.to_json(), nullptr), ValidationError);
    CHECK_THROWS_AS(cli::default_parameters("nope"), ValidationError);
  }

  TEST_CASE("reports carry the config echo and tool version") {
    const auto r = cli::run(cli::resolve_config("dims", nullptr, json{{"n", 3}, {"g", 2}}));
    CHECK(r.report["betti"] == 16);
    CHECK(r.report["hitchin_base"] == 8);
    CHECK(r.report["config"]["command"] == "dims");
    CHECK(r.report["tool"]["name"] == report::kToolName);
    CHECK(r.report["tool"]["version"] == report::kToolVersion);
  }

  TEST_CASE("echoed config reproduces the report") {
    const auto a = cli::run(cli::resolve_config("oper-wk", nullptr, json{{"samples", 5}}));
    const auto b = cli::run(cli::resolve_config("oper-wk", a.report["config"], nullptr));
    CHECK(report::to_stable_json(a.report) == report::to_stable_json(b.report));
  }

  TEST_CASE("command line round trip through files") {
    const auto out = scratch("hn.json"), csv = scratch("hn.csv");
    CHECK(dispatch({"hn", "verify", "--n", "3", "--g", "2", "--out", out.string(), "--csv", csv.string()}) == 0);
    const auto j = json::parse(slurp(out));
    CHECK(j["maximal"] == true);
    CHECK(j["types"] == 4);
    CHECK(slurp(csv).rfind("index,blocks,expanded\n", 0) == 0);
    const auto again = scratch("hn2.json");
    CHECK(dispatch({"hn", "verify", "--config", out.string(), "--out", again.string()}) == 0);
    CHECK(slurp(out) == slurp(again));
  }

  TEST_CASE("exit codes") {
    CHECK(dispatch({}) == 2);
    CHECK(dispatch({"dims", "--bogus", "1"}) == 2);
    CHECK(dispatch({"dims", "--n", "x"}) == 2);
    CHECK(dispatch({"dims", "--n", "1", "--out", scratch("bad.json").string()}) == 2);
    CHECK(dispatch({"dims", "--out", "/nonexistent-dir/report.json"}) == 3);
    const auto cfg = scratch("bad_config.json");
    std::ofstream(cfg) << "{\"n\": 2, \"unknown\": true}";
    CHECK(dispatch({"dims", "--config", cfg.string(), "--out", scratch("x.json").string()}) == 2);
  }

  TEST_CASE("harmonic command writes a sweep trace") {
    const auto r = cli::run(cli::resolve_config("harmonic-solve", nullptr, json{{"refinement", 1}}));
    CHECK(r.report["converged"] == true);
    REQUIRE(r.csv.has_value());
    CHECK(r.csv->rfind("sweep,energy,grad_norm,log_cond\n", 0) == 0);
  }

  TEST_CASE("gauge command is deterministic") {
    const auto config = cli::resolve_config("gauge-flow", nullptr, json{{"steps", 10}});
    const auto a = cli::run(config), b = cli::run(config);
    CHECK(report::to_stable_json(a.report) == report::to_stable_json(b.report));
    CHECK(a.csv == b.csv);
    CHECK(a.report["monotone"] == true);
  }

  TEST_CASE("suite detects an injected w4 constant") {
    suite::SuiteOptions o;
    o.inject = {"w4-constant"};
    const auto results = suite::run_acceptance(o);
    REQUIRE(results.size() == 11);
    CHECK_FALSE(results[3].passed);
    suite::SuiteOptions clean;
    CHECK(suite::run_acceptance(clean)[3].passed);
    CHECK_THROWS_AS(suite::parse_level("medium"), ValidationError);
  }
}
