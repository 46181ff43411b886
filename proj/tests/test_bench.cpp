#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "pik/bench.hpp"
#include "test_helpers.hpp"

using namespace pik;
using namespace pik::test;

namespace {

RunOutcome outcome(const std::string& puzzle, std::optional<int> attempts) {
    RunOutcome o;
    o.puzzle = puzzle;
    o.agent = "random";
    o.seed = 1;
    o.attempts_to_solve = attempts;
    return o;
}

// Base-2 weights; the log base cancels in the weighted average.
double auccess_base2(const std::vector<RunOutcome>& outcomes, int max_attempts) {
    double num = 0.0, den = 0.0;
    for (int k = 1; k <= max_attempts; ++k) {
        const double w = std::log2(k + 1.0) - std::log2(static_cast<double>(k));
        int solved = 0;
        for (const RunOutcome& o : outcomes)
            if (o.attempts_to_solve && *o.attempts_to_solve <= k) ++solved;
        num += w * (100.0 * solved / static_cast<double>(outcomes.size()));
        den += w;
    }
    return num / den;
}

std::filesystem::path test_tmp_dir(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::path(PIK_TEST_TMP) / name;
    std::filesystem::create_directories(dir);
    return dir;
}

const char* kTinyPuzzleTemplate = R"json({
  "name": "NAME",
  "gravity": {"x": 0, "y": -300},
  "episode_steps": 120,
  "bodies": [
    {"id": "target", "shape": {"kind": "circle", "radius": 10},
     "pose": {"x": XPOS, "y": 300, "angle": 0}, "dynamic": true,
     "material": {"restitution": 0.3, "friction": 0.4, "density": 1.0}},
    {"id": "floor", "shape": {"kind": "segment", "a": {"x": 0, "y": 10}, "b": {"x": 600, "y": 10}},
     "pose": {"x": 0, "y": 0, "angle": 0}, "dynamic": false,
     "material": {"restitution": 0.2, "friction": 0.5, "density": 1.0}}
  ],
  "action_space": {"family": "ball-radius", "radius_min": 4, "radius_max": 8, "radius_step": 2,
                   "x_range": [0, 600], "y_range": [0, 600]},
  "goal": {"kind": "region", "target": "target",
           "region": {"x0": RX0, "y0": 0, "x1": RX1, "y1": 60}}
})json";

std::string tiny_puzzle(const std::string& name, double x, double rx0, double rx1) {
    std::string text = kTinyPuzzleTemplate;
    auto replace = [&](const std::string& from, const std::string& to) {
        const auto pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, from.size(), to);
    };
    replace("NAME", name);
    replace("XPOS", std::to_string(x));
    replace("RX0", std::to_string(rx0));
    replace("RX1", std::to_string(rx1));
    return text;
}

std::filesystem::path write_tiny_suite(const std::string& dir_name) {
    const auto dir = test_tmp_dir(dir_name);
    {
        std::ofstream out(dir / "p1.json");
        out << tiny_puzzle("tiny_one", 250.0, 150.0, 350.0);
    }
    {
        std::ofstream out(dir / "p2.json");
        out << tiny_puzzle("tiny_two", 350.0, 250.0, 450.0);
    }
    {
        std::ofstream out(dir / "suite.json");
        out << R"json({"suite": "tiny", "max_attempts": 5,
                       "puzzles": ["p1.json", {"file": "p2.json", "max_attempts": 4}]})json";
    }
    return dir / "suite.json";
}

}  // namespace

TEST_CASE("auccess: closed-form boundary values") {
    std::vector<RunOutcome> all_first;
    for (int i = 0; i < 10; ++i) all_first.push_back(outcome("p", 1));
    CHECK(auccess(all_first, 10) == doctest::Approx(100.0).epsilon(1e-12));

    std::vector<RunOutcome> never;
    for (int i = 0; i < 10; ++i) never.push_back(outcome("p", std::nullopt));
    CHECK(auccess(never, 10) == doctest::Approx(0.0).epsilon(1e-12));

    // Single run solved exactly at attempt 10 of 10.
    const std::vector<RunOutcome> late = {outcome("p", 10)};
    const double expected = 100.0 * (std::log(11.0) - std::log(10.0)) / std::log(11.0);
    CHECK(auccess(late, 10) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(expected == doctest::Approx(3.9749).epsilon(1e-4));
}

TEST_CASE("auccess: weights telescope to log(M+1)") {
    for (const int m : {1, 5, 10, 30, 100}) {
        double sum = 0.0;
        for (int k = 1; k <= m; ++k) sum += std::log(k + 1.0) - std::log(static_cast<double>(k));
        CHECK(std::abs(sum - std::log(m + 1.0)) <= 1e-12);
    }
}

TEST_CASE("auccess: log-base invariance") {
    std::mt19937_64 rng(31);
    std::vector<RunOutcome> outcomes;
    for (int i = 0; i < 40; ++i) {
        const bool solved = rng() % 3 != 0;
        outcomes.push_back(outcome("p", solved ? std::optional<int>(1 + int(rng() % 30))
                                               : std::nullopt));
    }
    CHECK(std::abs(auccess(outcomes, 30) - auccess_base2(outcomes, 30)) <= 1e-12);
}

TEST_CASE("auccess: solving any run earlier never decreases the score") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<RunOutcome> outcomes;
        for (int i = 0; i < 20; ++i) {
            const bool solved = rng() % 2 == 0;
            outcomes.push_back(outcome("p", solved ? std::optional<int>(1 + int(rng() % 10))
                                                   : std::nullopt));
        }
        const double before = auccess(outcomes, 10);
        // Move one solved run earlier (or solve an unsolved one at attempt 10).
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            std::vector<RunOutcome> moved = outcomes;
            if (moved[i].attempts_to_solve && *moved[i].attempts_to_solve > 1)
                moved[i].attempts_to_solve = *moved[i].attempts_to_solve - 1;
            else if (!moved[i].attempts_to_solve)
                moved[i].attempts_to_solve = 10;
            CHECK(auccess(moved, 10) >= before - 1e-12);
        }
    }
}

TEST_CASE("auccess: degenerate all-solved-at-1 equals brute-force summation") {
    std::vector<RunOutcome> outcomes;
    for (int i = 0; i < 7; ++i) outcomes.push_back(outcome("p", 1));
    for (int i = 0; i < 3; ++i) outcomes.push_back(outcome("p", std::nullopt));
    // Brute force: s_k = 70 for all k, so the weighted average is 70.
    CHECK(auccess(outcomes, 17) == doctest::Approx(70.0).epsilon(1e-12));
}

TEST_CASE("pearson: hand values and error paths") {
    CHECK(pearson({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson({1, 2, 3}, {5, 3, 1}) == doctest::Approx(-1.0).epsilon(1e-12));

    // Hand computation: cov = 5/3, sd_a = sqrt(2/3), sd_b = sqrt(38/9).
    const double expected = 5.0 / std::sqrt(2.0 * (38.0 / 3.0));
    CHECK(pearson({1, 2, 3}, {2, 4, 7}) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(pearson({1, 2, 3}, {2, 4, 7}) == doctest::Approx(0.9934).epsilon(1e-4));
    CHECK(pearson({1, 2, 3}, {2, 4, 8}) == doctest::Approx(0.9820).epsilon(1e-4));

    CHECK_THROWS_AS(pearson({1.0}, {2.0}), std::invalid_argument);
    CHECK_THROWS_AS(pearson({1, 1, 1}, {2, 4, 8}), std::invalid_argument);
}

TEST_CASE("run_suite: deterministic across worker counts and round-trippable") {
    const auto manifest_path = write_tiny_suite("suite_workers");
    const SuiteManifest manifest = load_manifest(manifest_path.string());
    CHECK(manifest.puzzles.size() == 2);
    CHECK(manifest.puzzles[1].max_attempts == 4);

    SolverConfig base;
    const std::vector<AgentKind> agents = {AgentKind::kRandom};
    const BenchmarkReport r1 =
        run_suite(manifest, manifest_path.parent_path().string(), agents, 3, 77, 1, base);
    const BenchmarkReport r4 =
        run_suite(manifest, manifest_path.parent_path().string(), agents, 3, 77, 4, base);
    const std::string s1 = serialize_report(r1);
    const std::string s4 = serialize_report(r4);
    CHECK(s1 == s4);

    // One agent, three runs per puzzle, two puzzles.
    REQUIRE(r1.per_agent.count("random") == 1);
    CHECK(r1.per_agent.at("random").runs.size() == 6);
    CHECK(r1.per_agent.at("random").per_puzzle_auccess.size() == 2);

    // Round trip; the parser recomputes and checks the AUCCESS values.
    const BenchmarkReport parsed = parse_report(s1);
    CHECK(parsed.suite == r1.suite);
    CHECK(parsed.per_agent.at("random").auccess ==
          doctest::Approx(r1.per_agent.at("random").auccess).epsilon(1e-12));
    CHECK(serialize_report(parsed) == s1);

    // Self-consistency: recomputing from runs matches the stored value.
    CHECK(auccess(r1.per_agent.at("random").runs, r1.max_attempts) ==
          doctest::Approx(r1.per_agent.at("random").auccess).epsilon(1e-12));
}

TEST_CASE("run_suite: single-run outcome per puzzle for the random agent") {
    const auto manifest_path = write_tiny_suite("suite_single");
    const SuiteManifest manifest = load_manifest(manifest_path.string());
    SolverConfig base;
    const BenchmarkReport report = run_suite(manifest, manifest_path.parent_path().string(),
                                             {AgentKind::kRandom}, 1, 5, 2, base);
    const AgentReport& agent = report.per_agent.at("random");
    CHECK(agent.runs.size() == 2);
    CHECK(agent.runs[0].puzzle == "tiny_one");
    CHECK(agent.runs[1].puzzle == "tiny_two");
}

TEST_CASE("parse_report: corrupted AUCCESS fails the self-consistency check") {
    const auto manifest_path = write_tiny_suite("suite_corrupt");
    const SuiteManifest manifest = load_manifest(manifest_path.string());
    SolverConfig base;
    const BenchmarkReport report = run_suite(manifest, manifest_path.parent_path().string(),
                                             {AgentKind::kRandom}, 2, 9, 1, base);
    std::string text = serialize_report(report);
    const std::string needle = "\"auccess\": ";
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size() + 4, needle + "12.34567");
    CHECK_THROWS(parse_report(text));
}

TEST_CASE("load_manifest: missing keys and bad files are rejected") {
    const auto dir = test_tmp_dir("bad_manifest");
    {
        std::ofstream out(dir / "suite.json");
        out << R"json({"suite": "x", "puzzles": ["p.json"]})json";
    }
    CHECK_THROWS_AS(load_manifest((dir / "suite.json").string()), ParseError);
    CHECK_THROWS_AS(load_manifest((dir / "missing.json").string()), ParseError);
}
