#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pik/dynamics.hpp"
#include "pik/gp.hpp"
#include "pik/puzzle.hpp"
#include "pik/rng.hpp"
#include "pik/sobol.hpp"

namespace pik {

enum class AgentKind { kCausalPik, kRbfBo, kRandom };

const char* agent_name(AgentKind agent);
std::optional<AgentKind> agent_from_name(const std::string& name);

struct SolverConfig {
    int n_initial = 9;
    int n_candidate = 500;
    int n_best = 5;
    int n_mental_rollouts = 5;
    int max_attempts = 10;
    // Spread of the object-centered warm-up Gaussian; 0 = auto
    // (5% of the action-space x extent).
    double init_sigma = 0.0;
    AgentKind agent = AgentKind::kCausalPik;
    std::uint64_t seed = 0;
    PredictorConfig predictor;
    GPHyperparams gp;
    SimNoise mental_noise{0.0, 0.05, 3.0, 0};  // seed field unused; derived per rollout

    double effective_init_sigma(const ActionSpace& space) const {
        return init_sigma > 0.0 ? init_sigma
                                : 0.05 * (space.x_range[1] - space.x_range[0]);
    }
};

struct AttemptRecord {
    int index = 0;  // 1-based, consecutive
    Action action;
    double score = 0.0;
    bool success = false;
    std::optional<double> acquisition_value;  // UCB of the chosen candidate
    std::optional<double> expected_outcome;   // mean mental-rollout score
};

struct SolveResult {
    std::string puzzle;
    std::vector<AttemptRecord> attempts;
    bool solved = false;
    std::vector<std::pair<Action, double>> warmup;  // simulated, not counted
};

struct ProposeDiagnostics {
    double acquisition_value = 0.0;
    double expected_outcome = 0.0;
    int valid_candidates = 0;
};

/// Object-centered Gaussian warm-up samples, each scored by one noisy mental
/// rollout. Invalid placements are resampled (bounded), never returned.
std::pair<std::vector<Action>, std::vector<double>> init_samples(const PuzzleSpec& puzzle,
                                                                 const SolverConfig& cfg,
                                                                 Rng& rng);

/// One acquisition round: rank Sobol candidates by UCB, estimate the top
/// n_best by noisy mental rollouts, return the argmax expected outcome
/// (ties: higher UCB, then lower candidate index).
Action propose(const GPModel& model, const PuzzleSpec& puzzle, const SolverConfig& cfg,
               int iteration, Rng& rng, EffectCache* cache, ProposeDiagnostics* diag = nullptr);

/// Full solve loop for the configured agent. Never throws on unsolved
/// puzzles; that is a normal result.
SolveResult solve(const PuzzleSpec& puzzle, const SolverConfig& cfg);

/// Uniform-valid-action baseline.
SolveResult random_agent(const PuzzleSpec& puzzle, const SolverConfig& cfg);

}  // namespace pik
