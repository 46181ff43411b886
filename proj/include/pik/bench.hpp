#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pik/solver.hpp"

namespace pik {

/// One (puzzle, agent, seed) solve outcome.
struct RunOutcome {
    std::string puzzle;
    std::string agent;
    std::uint64_t seed = 0;
    std::optional<int> attempts_to_solve;  // empty = unsolved
};

struct AgentReport {
    double auccess = 0.0;                            // pooled over all runs, [0,100]
    std::map<std::string, double> per_puzzle_auccess;
    std::vector<RunOutcome> runs;                    // ordered (puzzle, run index)
};

struct BenchmarkReport {
    std::string suite;
    int max_attempts = 0;
    int runs_per_puzzle = 0;
    std::uint64_t master_seed = 0;
    std::map<std::string, AgentReport> per_agent;
    std::string config_digest;
    std::string tool_version;
};

struct SuiteManifest {
    std::string suite;
    int max_attempts = 10;
    struct Entry {
        std::string file;                 // puzzle path, relative to the manifest
        std::optional<int> max_attempts;  // per-puzzle override
    };
    std::vector<Entry> puzzles;
};

/// Attempt-weighted success metric in [0,100]:
/// sum_k w_k s_k / sum_k w_k, w_k = log(k+1) - log(k), s_k the percentage of
/// runs solved within k attempts.
double auccess(const std::vector<RunOutcome>& outcomes, int max_attempts);

/// Sample Pearson correlation. Throws std::invalid_argument on fewer than two
/// pairs or zero variance.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

SuiteManifest load_manifest(const std::string& path);

/// Runs every (puzzle, agent, run) combination with derived per-run seeds.
/// The report is independent of worker_count; workers <= 0 means one worker.
BenchmarkReport run_suite(const SuiteManifest& manifest, const std::string& manifest_dir,
                          const std::vector<AgentKind>& agents, int runs_per_puzzle,
                          std::uint64_t master_seed, int worker_count,
                          const SolverConfig& base_config);

/// Canonical report serialization: fixed key order, content digest; byte
/// identical across runs for identical inputs.
std::string serialize_report(const BenchmarkReport& report);

/// Parses and self-checks a report (stored AUCCESS must match the runs).
BenchmarkReport parse_report(const std::string& text);

}  // namespace pik
