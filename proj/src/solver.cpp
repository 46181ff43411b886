#include "pik/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pik {
namespace {

constexpr std::uint64_t kWarmupStream = 0x7761726dULL;
constexpr std::uint64_t kMentalStream = 0x6d656e74ULL;
constexpr std::uint64_t kPredictorStream = 0x70726564ULL;

Action uniform_action(const ActionSpace& space, Rng& rng) {
    std::uniform_real_distribution<double> ux(space.x_range[0], space.x_range[1]);
    std::uniform_real_distribution<double> uy(space.y_range[0], space.y_range[1]);
    std::uniform_int_distribution<int> usel(0, space.selector_count() - 1);
    Action a;
    a.position = {ux(rng), uy(rng)};
    const int sel = usel(rng);
    if (space.is_tool_set())
        a.selector = sel;
    else
        a.selector = space.radius_at(sel);
    return a;
}

Action uniform_valid_action(const PuzzleSpec& puzzle, Rng& rng) {
    for (int tries = 0; tries < 100000; ++tries) {
        const Action a = uniform_action(puzzle.action_space, rng);
        if (placement_valid(puzzle, a)) return a;
    }
    throw std::runtime_error("no valid placement found in puzzle '" + puzzle.name + "'");
}

double mental_score(const PuzzleSpec& puzzle, const Action& action, const SolverConfig& cfg,
                    std::uint64_t rollout_seed) {
    SimNoise noise = cfg.mental_noise;
    noise.seed = rollout_seed;
    const std::optional<SimNoise> opt =
        noise.zero() ? std::nullopt : std::optional<SimNoise>(noise);
    return execute(puzzle, action, opt, /*collect_states=*/false).score;
}

KernelMode kernel_mode_of(AgentKind agent) {
    return agent == AgentKind::kRbfBo ? KernelMode::kRbf : KernelMode::kCausal;
}

}  // namespace

const char* agent_name(AgentKind agent) {
    switch (agent) {
        case AgentKind::kCausalPik: return "causal-pik";
        case AgentKind::kRbfBo: return "rbf-bo";
        case AgentKind::kRandom: return "random";
    }
    return "unknown";
}

std::optional<AgentKind> agent_from_name(const std::string& name) {
    if (name == "causal-pik") return AgentKind::kCausalPik;
    if (name == "rbf-bo") return AgentKind::kRbfBo;
    if (name == "random") return AgentKind::kRandom;
    return std::nullopt;
}

std::pair<std::vector<Action>, std::vector<double>> init_samples(const PuzzleSpec& puzzle,
                                                                 const SolverConfig& cfg,
                                                                 Rng& rng) {
    std::vector<const BodySpec*> dynamic_bodies;
    for (const BodySpec& b : puzzle.scene.bodies)
        if (b.dynamic) dynamic_bodies.push_back(&b);
    if (dynamic_bodies.empty())
        throw std::invalid_argument("init_samples: puzzle has no dynamic object");

    const ActionSpace& space = puzzle.action_space;
    const double sigma = cfg.effective_init_sigma(space);
    std::uniform_int_distribution<std::size_t> pick(0, dynamic_bodies.size() - 1);
    std::normal_distribution<double> spread(0.0, sigma);
    std::uniform_int_distribution<int> usel(0, space.selector_count() - 1);

    std::vector<Action> actions;
    std::vector<double> scores;
    for (int k = 0; k < cfg.n_initial; ++k) {
        Action action;
        bool found = false;
        for (int tries = 0; tries < 100 && !found; ++tries) {
            const Vec2 center = dynamic_bodies[pick(rng)]->position;
            action.position.x =
                std::clamp(center.x + spread(rng), space.x_range[0], space.x_range[1]);
            action.position.y =
                std::clamp(center.y + spread(rng), space.y_range[0], space.y_range[1]);
            const int sel = usel(rng);
            if (space.is_tool_set())
                action.selector = sel;
            else
                action.selector = space.radius_at(sel);
            found = placement_valid(puzzle, action);
        }
        if (!found) action = uniform_valid_action(puzzle, rng);

        const std::uint64_t rollout_seed =
            mix_seed(cfg.seed, kWarmupStream, static_cast<std::uint64_t>(k));
        actions.push_back(action);
        scores.push_back(mental_score(puzzle, action, cfg, rollout_seed));
    }
    return {std::move(actions), std::move(scores)};
}

Action propose(const GPModel& model, const PuzzleSpec& puzzle, const SolverConfig& cfg,
               int iteration, Rng& rng, EffectCache* cache, ProposeDiagnostics* diag) {
    const std::vector<Action> candidates =
        sobol_candidates(puzzle.action_space, cfg.n_candidate, iteration);

    struct Scored {
        int index = 0;  // position in the Sobol list
        double acquisition = 0.0;
    };
    std::vector<Scored> ranked;
    ranked.reserve(candidates.size());
    for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
        const Action& candidate = candidates[static_cast<std::size_t>(i)];
        if (!placement_valid(puzzle, candidate)) continue;
        Posterior p;
        if (model.mode == KernelMode::kCausal)
            p = posterior(model, causal_effect(puzzle, candidate, cfg.predictor, cache));
        else
            p = posterior(model, candidate);
        ranked.push_back({i, ucb(p.mean, p.variance, cfg.gp.ucb_kappa)});
    }

    if (ranked.empty()) {
        // Every Sobol candidate was occluded; fall back to a random valid action.
        const Action fallback = uniform_valid_action(puzzle, rng);
        if (diag) *diag = ProposeDiagnostics{0.0, 0.0, 0};
        return fallback;
    }

    std::stable_sort(ranked.begin(), ranked.end(), [](const Scored& a, const Scored& b) {
        if (a.acquisition != b.acquisition) return a.acquisition > b.acquisition;
        return a.index < b.index;
    });

    const int top = std::min<int>(cfg.n_best, static_cast<int>(ranked.size()));
    int best_rank = 0;
    double best_expected = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < top; ++r) {
        const Action& candidate = candidates[static_cast<std::size_t>(ranked[r].index)];
        double sum = 0.0;
        for (int m = 0; m < cfg.n_mental_rollouts; ++m) {
            const std::uint64_t rollout_seed =
                mix_seed(cfg.seed, kMentalStream, static_cast<std::uint64_t>(iteration),
                         static_cast<std::uint64_t>(ranked[r].index), static_cast<std::uint64_t>(m));
            sum += mental_score(puzzle, candidate, cfg, rollout_seed);
        }
        const double expected = sum / cfg.n_mental_rollouts;
        // Ranked order already encodes the UCB-then-index tie break.
        if (expected > best_expected) {
            best_expected = expected;
            best_rank = r;
        }
    }

    if (diag) {
        diag->acquisition_value = ranked[static_cast<std::size_t>(best_rank)].acquisition;
        diag->expected_outcome = best_expected;
        diag->valid_candidates = static_cast<int>(ranked.size());
    }
    return candidates[static_cast<std::size_t>(ranked[static_cast<std::size_t>(best_rank)].index)];
}

SolveResult random_agent(const PuzzleSpec& puzzle, const SolverConfig& cfg) {
    SolveResult result;
    result.puzzle = puzzle.name;
    Rng rng = make_rng(cfg.seed);
    for (int i = 1; i <= cfg.max_attempts; ++i) {
        const Action action = uniform_valid_action(puzzle, rng);
        const ExecuteResult res = execute(puzzle, action, std::nullopt, /*collect_states=*/false);
        AttemptRecord record;
        record.index = i;
        record.action = action;
        record.score = res.score;
        record.success = res.trajectory.success;
        result.attempts.push_back(record);
        if (record.success) {
            result.solved = true;
            break;
        }
    }
    return result;
}

SolveResult solve(const PuzzleSpec& puzzle, const SolverConfig& base_cfg) {
    if (base_cfg.agent == AgentKind::kRandom) return random_agent(puzzle, base_cfg);

    SolverConfig cfg = base_cfg;
    if (cfg.predictor.noise && !cfg.predictor.noise->zero())
        cfg.predictor.noise->seed = mix_seed(cfg.seed, kPredictorStream);

    SolveResult result;
    result.puzzle = puzzle.name;
    Rng rng = make_rng(cfg.seed);
    const KernelMode mode = kernel_mode_of(cfg.agent);

    EffectCache cache(cfg.predictor.cache_quantum);
    auto [actions, scores] = init_samples(puzzle, cfg, rng);
    for (std::size_t i = 0; i < actions.size(); ++i)
        result.warmup.emplace_back(actions[i], scores[i]);

    std::vector<CausalEffect> effects;
    if (mode == KernelMode::kCausal)
        for (const Action& a : actions)
            effects.push_back(causal_effect(puzzle, a, cfg.predictor, &cache));

    for (int i = 1; i <= cfg.max_attempts; ++i) {
        const GPModel model =
            fit(mode, puzzle.action_space, actions, effects, scores, cfg.gp);
        ProposeDiagnostics diag;
        const Action action = propose(model, puzzle, cfg, i - 1, rng, &cache, &diag);
        const ExecuteResult res = execute(puzzle, action, std::nullopt, /*collect_states=*/false);

        AttemptRecord record;
        record.index = i;
        record.action = action;
        record.score = res.score;
        record.success = res.trajectory.success;
        record.acquisition_value = diag.acquisition_value;
        record.expected_outcome = diag.expected_outcome;
        result.attempts.push_back(record);

        if (record.success) {
            result.solved = true;
            break;
        }
        actions.push_back(action);
        scores.push_back(record.score);
        if (mode == KernelMode::kCausal)
            effects.push_back(causal_effect(puzzle, action, cfg.predictor, &cache));
    }
    return result;
}

}  // namespace pik
