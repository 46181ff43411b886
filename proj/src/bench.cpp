#include "pik/bench.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pik/json_util.hpp"
#include "pik/version.hpp"

namespace pik {
namespace {

using jsonutil::check_keys;
using jsonutil::get_int;
using jsonutil::get_string;
using jsonutil::json;
using jsonutil::ordered_json;

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

double auccess_of(const std::vector<const RunOutcome*>& outcomes, int max_attempts) {
    double num = 0.0, den = 0.0;
    const double n = static_cast<double>(outcomes.size());
    for (int k = 1; k <= max_attempts; ++k) {
        const double w = std::log(k + 1.0) - std::log(static_cast<double>(k));
        int solved = 0;
        for (const RunOutcome* o : outcomes)
            if (o->attempts_to_solve && *o->attempts_to_solve <= k) ++solved;
        num += w * (100.0 * solved / n);
        den += w;
    }
    return num / den;
}

ordered_json outcome_json(const RunOutcome& o) {
    ordered_json j;
    j["puzzle"] = o.puzzle;
    j["agent"] = o.agent;
    j["seed"] = o.seed;
    if (o.attempts_to_solve)
        j["attempts_to_solve"] = *o.attempts_to_solve;
    else
        j["attempts_to_solve"] = nullptr;
    return j;
}

}  // namespace

double auccess(const std::vector<RunOutcome>& outcomes, int max_attempts) {
    if (outcomes.empty()) throw std::invalid_argument("auccess: no outcomes");
    if (max_attempts < 1) throw std::invalid_argument("auccess: max_attempts must be >= 1");
    std::vector<const RunOutcome*> ptrs;
    ptrs.reserve(outcomes.size());
    for (const RunOutcome& o : outcomes) ptrs.push_back(&o);
    return auccess_of(ptrs, max_attempts);
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("pearson: need at least two paired values");
    const double n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0)
        throw std::invalid_argument("pearson: undefined correlation for zero-variance input");
    return cov / std::sqrt(var_a * var_b);
}

SuiteManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const json doc = jsonutil::parse(buffer.str(), path);
    check_keys(doc, path, {"suite", "max_attempts", "puzzles"});

    SuiteManifest manifest;
    manifest.suite = get_string(doc, "suite", path);
    manifest.max_attempts = get_int(doc, "max_attempts", path);
    if (manifest.max_attempts < 1) throw ValidationError(path + ": max_attempts must be >= 1");
    const auto& arr = doc.at("puzzles");
    if (!arr.is_array() || arr.empty()) throw ParseError(path + ".puzzles: expected a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ctx = path + ".puzzles[" + std::to_string(i) + "]";
        SuiteManifest::Entry entry;
        if (arr[i].is_string()) {
            entry.file = arr[i].get<std::string>();
        } else {
            check_keys(arr[i], ctx, {"file"}, {"max_attempts"});
            entry.file = get_string(arr[i], "file", ctx);
            if (arr[i].contains("max_attempts")) entry.max_attempts = get_int(arr[i], "max_attempts", ctx);
        }
        manifest.puzzles.push_back(std::move(entry));
    }
    return manifest;
}

BenchmarkReport run_suite(const SuiteManifest& manifest, const std::string& manifest_dir,
                          const std::vector<AgentKind>& agents, int runs_per_puzzle,
                          std::uint64_t master_seed, int worker_count,
                          const SolverConfig& base_config) {
    if (runs_per_puzzle < 1) throw std::invalid_argument("run_suite: runs_per_puzzle must be >= 1");
    if (agents.empty()) throw std::invalid_argument("run_suite: no agents");

    // Load and validate everything before the first run.
    std::vector<PuzzleSpec> puzzles;
    std::vector<int> attempt_caps;
    for (const auto& entry : manifest.puzzles) {
        const std::filesystem::path p = std::filesystem::path(manifest_dir) / entry.file;
        puzzles.push_back(load_puzzle(p.string()));
        attempt_caps.push_back(entry.max_attempts.value_or(manifest.max_attempts));
    }

    struct Task {
        std::size_t puzzle = 0;
        std::size_t agent = 0;
        int run = 0;
    };
    std::vector<Task> tasks;
    for (std::size_t pi = 0; pi < puzzles.size(); ++pi)
        for (std::size_t ai = 0; ai < agents.size(); ++ai)
            for (int run = 0; run < runs_per_puzzle; ++run) tasks.push_back({pi, ai, run});

    std::vector<RunOutcome> outcomes(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            const PuzzleSpec& puzzle = puzzles[task.puzzle];
            const AgentKind agent = agents[task.agent];

            SolverConfig cfg = base_config;
            cfg.agent = agent;
            cfg.max_attempts = attempt_caps[task.puzzle];
            cfg.seed = mix_seed(master_seed, fnv1a64(puzzle.name), fnv1a64(agent_name(agent)),
                                static_cast<std::uint64_t>(task.run));

            const SolveResult result = solve(puzzle, cfg);
            RunOutcome outcome;
            outcome.puzzle = puzzle.name;
            outcome.agent = agent_name(agent);
            outcome.seed = cfg.seed;
            if (result.solved) outcome.attempts_to_solve = result.attempts.back().index;
            outcomes[i] = std::move(outcome);
        }
    };

    const int workers = std::max(1, worker_count);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    BenchmarkReport report;
    report.suite = manifest.suite;
    report.max_attempts = manifest.max_attempts;
    report.runs_per_puzzle = runs_per_puzzle;
    report.master_seed = master_seed;
    report.tool_version = kToolVersion;

    for (std::size_t ai = 0; ai < agents.size(); ++ai) {
        AgentReport agent_report;
        for (std::size_t i = 0; i < tasks.size(); ++i)
            if (tasks[i].agent == ai) agent_report.runs.push_back(outcomes[i]);
        agent_report.auccess = auccess(agent_report.runs, report.max_attempts);
        for (const PuzzleSpec& puzzle : puzzles) {
            std::vector<RunOutcome> subset;
            for (const RunOutcome& o : agent_report.runs)
                if (o.puzzle == puzzle.name) subset.push_back(o);
            agent_report.per_puzzle_auccess[puzzle.name] = auccess(subset, report.max_attempts);
        }
        report.per_agent[agent_name(agents[ai])] = std::move(agent_report);
    }

    // Digest of everything that determines the result.
    ordered_json cfg_json;
    cfg_json["suite"] = manifest.suite;
    cfg_json["max_attempts"] = manifest.max_attempts;
    cfg_json["runs_per_puzzle"] = runs_per_puzzle;
    cfg_json["master_seed"] = master_seed;
    {
        std::vector<std::string> names;
        for (AgentKind a : agents) names.push_back(agent_name(a));
        cfg_json["agents"] = names;
    }
    {
        std::vector<std::string> names;
        for (const PuzzleSpec& p : puzzles) names.push_back(p.name);
        cfg_json["puzzles"] = names;
    }
    cfg_json["per_puzzle_max_attempts"] = attempt_caps;
    report.config_digest = hex64(fnv1a64(cfg_json.dump()));
    return report;
}

std::string serialize_report(const BenchmarkReport& report) {
    ordered_json doc;
    doc["format_version"] = kReportFormatVersion;
    doc["tool_version"] = report.tool_version;
    doc["suite"] = report.suite;
    doc["max_attempts"] = report.max_attempts;
    doc["runs_per_puzzle"] = report.runs_per_puzzle;
    doc["master_seed"] = report.master_seed;
    doc["config_digest"] = report.config_digest;
    ordered_json agents;
    for (const auto& [name, agent_report] : report.per_agent) {
        ordered_json a;
        a["auccess"] = agent_report.auccess;
        ordered_json per_puzzle;
        for (const auto& [puzzle, value] : agent_report.per_puzzle_auccess)
            per_puzzle[puzzle] = value;
        a["per_puzzle_auccess"] = per_puzzle;
        ordered_json runs = ordered_json::array();
        for (const RunOutcome& o : agent_report.runs) runs.push_back(outcome_json(o));
        a["runs"] = runs;
        agents[name] = a;
    }
    doc["per_agent"] = agents;
    doc["content_digest"] = hex64(fnv1a64(doc.dump()));
    return doc.dump(2) + "\n";
}

BenchmarkReport parse_report(const std::string& text) {
    const json doc = jsonutil::parse(text, "report");
    check_keys(doc, "report",
               {"format_version", "tool_version", "suite", "max_attempts", "runs_per_puzzle",
                "master_seed", "config_digest", "per_agent", "content_digest"});

    BenchmarkReport report;
    report.tool_version = get_string(doc, "tool_version", "report");
    report.suite = get_string(doc, "suite", "report");
    report.max_attempts = get_int(doc, "max_attempts", "report");
    report.runs_per_puzzle = get_int(doc, "runs_per_puzzle", "report");
    report.master_seed = doc.at("master_seed").get<std::uint64_t>();
    report.config_digest = get_string(doc, "config_digest", "report");

    for (const auto& [name, a] : doc.at("per_agent").items()) {
        const std::string ctx = "report.per_agent." + name;
        check_keys(a, ctx, {"auccess", "per_puzzle_auccess", "runs"});
        AgentReport agent_report;
        agent_report.auccess = a.at("auccess").get<double>();
        for (const auto& [puzzle, value] : a.at("per_puzzle_auccess").items())
            agent_report.per_puzzle_auccess[puzzle] = value.get<double>();
        for (const auto& r : a.at("runs")) {
            check_keys(r, ctx + ".runs[]", {"puzzle", "agent", "seed", "attempts_to_solve"});
            RunOutcome o;
            o.puzzle = r.at("puzzle").get<std::string>();
            o.agent = r.at("agent").get<std::string>();
            o.seed = r.at("seed").get<std::uint64_t>();
            if (!r.at("attempts_to_solve").is_null())
                o.attempts_to_solve = r.at("attempts_to_solve").get<int>();
            agent_report.runs.push_back(std::move(o));
        }
        // Self-consistency: the stored AUCCESS must be recomputable from runs.
        const double recomputed = auccess(agent_report.runs, report.max_attempts);
        if (std::abs(recomputed - agent_report.auccess) > 1e-9)
            throw ValidationError("report: stored AUCCESS for '" + name +
                                  "' does not match its runs");
        report.per_agent[name] = std::move(agent_report);
    }
    return report;
}

}  // namespace pik
