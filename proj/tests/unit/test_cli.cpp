#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "finnet/cli/commands.hpp"

using namespace finnet;
using namespace finnet::cli;
namespace fs = std::filesystem;

namespace {

const std::string kScenarios = FINNET_SCENARIO_DIR;

std::string scenario(const std::string& name) { return kScenarios + "/" + name + ".json"; }

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("finnet_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const fs::path& dir, const std::string& name, const std::string& text) {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunOutcome run_quiet(RunRequest req) {
    std::ostringstream err;
    return run(req, err);
}

int run_binary(const std::string& args) {
    const char* exe = std::getenv("FINNET_CLI");
    REQUIRE(exe != nullptr);
    const std::string cmd = std::string(exe) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kExample1 = R"({
  "network": {"C": [[0, 0.5], [0.5, 0]], "D": [[0.5, 0.25], [0.25, 0.5]],
              "p": [4, 4], "beta": [1, 1], "V_lower": [5, 5]},
  "initial_states": [[3.0, 0.2]]
})";

}  // namespace

TEST_CASE("malformed JSON reports the line") {
    try {
        parse_scenario("{\n  \"network\": {\n    \"C\": [[0, 1],,\n");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("field errors name the field") {
    try {
        parse_scenario(R"({"network": {"C": [[0, 0.5], [0.5, 0]], "D": [[1]], "p": [1],
                          "beta": [1, 1], "V_lower": "five"}})");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("network.V_lower") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scenario(R"({"netwerk": {}})"), InputError);
    CHECK_THROWS_AS(parse_scenario(R"([1, 2])"), InputError);
}

TEST_CASE("exit code 2 for bad input and invalid networks") {
    const auto dir = scratch("bad");
    RunRequest req{"simulate", write_file(dir, "bad.json", "{ nope"), (dir / "out").string(), {}};
    CHECK(run_quiet(req).exit_code == kExitInvalid);

    req.scenario_path = write_file(dir, "diag.json", R"({
      "network": {"C": [[0.2, 0.5], [0.5, 0]], "D": [[1, 0], [0, 1]], "p": [1, 1],
                  "beta": [1, 1], "V_lower": [1, 1]}})");
    CHECK(run_quiet(req).exit_code == kExitInvalid);

    req.scenario_path = (dir / "missing.json").string();
    CHECK(run_quiet(req).exit_code == kExitInvalid);

    req.command = "robust";
    req.scenario_path = scenario("example1");  // no interval block
    CHECK(run_quiet(req).exit_code == kExitInvalid);
}

TEST_CASE("exit code 3 when the solver cannot proceed") {
    const auto dir = scratch("solver");
    RunRequest req{"intervene",
                   write_file(dir, "deep.json", R"({
      "network": {"C": [[0, 0.5], [0.5, 0]], "D": [[0.5, 0.25], [0.25, 0.5]],
                  "p": [4, 4], "beta": [1, 1], "V_lower": [50, 50]},
      "initial_states": [[-1, -1]]})"),
                   (dir / "out").string(),
                   {}};
    CHECK(run_quiet(req).exit_code == kExitSolver);
}

TEST_CASE("simulate with horizon 0 writes one CSV row") {
    const auto dir = scratch("t0");
    RunRequest req{"simulate", write_file(dir, "ex1.json", kExample1), (dir / "out").string(), {}};
    req.overrides.horizon = 0;
    const auto out = run_quiet(req);
    REQUIRE(out.exit_code == kExitOk);
    const auto csv = slurp(dir / "out" / "simulate_0.csv");
    CHECK(csv == "t,x_1,x_2\n0,3,0.2\n");
    CHECK(fs::exists(dir / "out" / "simulate.json"));
}

TEST_CASE("CSV uses nine significant digits") {
    std::ostringstream os;
    write_csv(os, {{1.0 / 3.0, -2.0 / 3.0, 12345.678912345}});
    CHECK(os.str() == "t,x_1,x_2,x_3\n0,0.333333333,-0.666666667,12345.6789\n");
}

TEST_CASE("equilibria of example 2") {
    const auto ex = execute("equilibria", load_scenario(scenario("example2")));
    CHECK(ex.report.results["consistent_count"] == 8);
    CHECK(ex.report.results["candidates"].size() == 16);
    CHECK(ex.report.results["existence"]["positive_exists"] == true);
    CHECK(ex.report.results["existence"]["positive_unique"] == false);
}

TEST_CASE("cycles of example 2") {
    auto sc = load_scenario(scenario("example2"));
    sc.options.trials = 20;
    const auto ex = execute("cycles", sc);
    const auto& run0 = ex.report.results["runs"][0];
    CHECK(run0["classification"]["kind"] == "cycle");
    CHECK(run0["classification"]["period"] == 8);
    CHECK(run0["lifted_residual"].get<double>() < 1e-9);
    CHECK(ex.report.results["no_period2"]["period2_found"] == 0);
}

TEST_CASE("invariance and robust commands") {
    const auto inv = execute("invariance", load_scenario(scenario("example1")));
    CHECK(inv.report.results["report"]["orthant0_invariant"] == true);
    CHECK(inv.report.results["extreme_orthants"][0]["tau"] == 1);
    CHECK(inv.report.results["intermediate_regions"].size() == 2);

    const auto rob = execute("robust", load_scenario(scenario("robust_pair")));
    CHECK(rob.report.results["runs"][0]["in_robust_set"] == true);
    CHECK(rob.report.results["runs"][0]["ordered"] == true);
    CHECK(rob.trajectories.size() >= 1);
}

TEST_CASE("intervene command") {
    const auto ex = execute("intervene", load_scenario(scenario("example1")));
    for (const auto& plan : ex.report.results["plans"]) CHECK(plan["success"] == true);
    CHECK(ex.exit_code == kExitOk);
}

TEST_CASE("runs are deterministic and reports round-trip") {
    const auto a = execute("cycles", load_scenario(scenario("example1")));
    const auto b = execute("cycles", load_scenario(scenario("example1")));
    CHECK(a.report.same_content(b.report));
    CHECK(a.report.results.dump() == b.report.results.dump());

    const auto text = a.report.serialize();
    const auto back = ReportBundle::from_json(nlohmann::json::parse(text));
    CHECK(back.same_content(a.report));
    CHECK(back.tool_version == kToolVersion);
}

TEST_CASE("flags override the scenario") {
    auto sc = load_scenario(scenario("example1"));
    Options o;
    o.horizon = 7;
    sc.options.merge(o);
    const auto ex = execute("simulate", sc);
    CHECK(ex.report.results["horizon"] == 7);
    CHECK(ex.trajectories[0].second.size() == 8);
}

TEST_CASE("command-line binary") {
    const auto dir = scratch("bin");
    const std::string out = " --out " + (dir / "out").string();
    CHECK(run_binary("simulate --scenario " + scenario("example1") + out) == 0);
    CHECK(run_binary("simulate --scenario " + scenario("example1") + " --horizon 0" + out) == 0);
    CHECK(run_binary("bogus --scenario " + scenario("example1") + out) == 2);
    CHECK(run_binary("simulate --scenario " + scenario("example1") +
                     " --verbatim-v-update --clamped-v-update" + out) == 2);
    CHECK(run_binary("simulate --horizon abc --scenario " + scenario("example1") + out) == 2);
    CHECK(run_binary("simulate" + out) == 2);
    CHECK(run_binary("intervene --clamped-v-update --nonnegative-injection --scenario " +
                     scenario("example1") + out) == 0);
}
