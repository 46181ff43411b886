// pik: solve physics puzzles with causal-kernel Bayesian optimization,
// benchmark agents, render rollouts and explain action similarities.
//
// Exit codes: 0 success, 1 usage/config error, 2 domain failure
// (unsolved puzzle, invalid placement).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pik/bench.hpp"
#include "pik/dynamics.hpp"
#include "pik/kernel.hpp"
#include "pik/render.hpp"
#include "pik/serialize.hpp"
#include "pik/solver.hpp"
#include "pik/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDomain = 2;

std::string default_out_dir() {
    if (const char* env = std::getenv("PIK_OUT_DIR")) return env;
    return "out";
}

struct CommonOptions {
    std::uint64_t seed = 0;
    std::string out_dir = default_out_dir();
    std::string agent = "causal-pik";
    int max_attempts = 10;
    int workers = 1;
    int stride = 10;
    std::optional<double> beta;
    double kappa = 2.0;
    double noise_position = 0.0;
    double noise_restitution = 0.05;
    double noise_action = 3.0;
    double predictor_noise_position = 0.0;
    double predictor_noise_restitution = 0.0;
};

pik::SolverConfig make_solver_config(const CommonOptions& opt) {
    pik::SolverConfig cfg;
    cfg.seed = opt.seed;
    cfg.max_attempts = opt.max_attempts;
    cfg.gp.ucb_kappa = opt.kappa;
    cfg.mental_noise.position_sigma = opt.noise_position;
    cfg.mental_noise.restitution_sigma = opt.noise_restitution;
    cfg.mental_noise.action_jitter_sigma = opt.noise_action;
    if (opt.predictor_noise_position > 0.0 || opt.predictor_noise_restitution > 0.0) {
        pik::SimNoise noise;
        noise.position_sigma = opt.predictor_noise_position;
        noise.restitution_sigma = opt.predictor_noise_restitution;
        cfg.predictor.noise = noise;
    }
    return cfg;
}

pik::PuzzleSpec load_with_overrides(const std::string& path, const CommonOptions& opt) {
    pik::PuzzleSpec puzzle = pik::load_puzzle(path);
    if (opt.beta) {
        puzzle.reward_cfg.beta = *opt.beta;  // flag beats puzzle file
        pik::validate_puzzle(puzzle);
    }
    return puzzle;
}

pik::Action parse_action_arg(const std::string& text) {
    return pik::action_from_json(pik::jsonutil::parse(text, "--action"), "--action");
}

int cmd_solve(const std::string& puzzle_path, const CommonOptions& opt) {
    const pik::PuzzleSpec puzzle = load_with_overrides(puzzle_path, opt);
    const auto agent = pik::agent_from_name(opt.agent);
    if (!agent) {
        std::cerr << "unknown agent '" << opt.agent << "'\n";
        return kExitError;
    }
    pik::SolverConfig cfg = make_solver_config(opt);
    cfg.agent = *agent;

    const pik::SolveResult result = pik::solve(puzzle, cfg);

    std::filesystem::create_directories(opt.out_dir);
    const auto result_path = std::filesystem::path(opt.out_dir) / (puzzle.name + "_result.json");
    {
        std::ofstream out(result_path);
        out << pik::serialize_solve_result(result, opt.agent, cfg.seed);
    }
    const auto log_path = std::filesystem::path(opt.out_dir) / (puzzle.name + "_attempts.log");
    {
        std::ofstream log(log_path);
        for (const pik::AttemptRecord& a : result.attempts) {
            log << "attempt " << a.index << " action=" << pik::action_to_json(a.action).dump()
                << " score=" << a.score << " success=" << (a.success ? "true" : "false");
            if (a.acquisition_value) log << " acquisition=" << *a.acquisition_value;
            if (a.expected_outcome) log << " expected=" << *a.expected_outcome;
            log << "\n";
        }
    }

    std::cout << (result.solved ? "solved" : "unsolved") << " " << puzzle.name << " in "
              << result.attempts.size() << " attempt(s); result: " << result_path.string() << "\n";
    return result.solved ? kExitOk : kExitDomain;
}

int cmd_bench(const std::string& manifest_path, const std::string& agents_arg, int runs,
              const CommonOptions& opt) {
    const pik::SuiteManifest manifest = pik::load_manifest(manifest_path);

    std::vector<pik::AgentKind> agents;
    std::stringstream ss(agents_arg);
    std::string name;
    while (std::getline(ss, name, ',')) {
        const auto agent = pik::agent_from_name(name);
        if (!agent) {
            std::cerr << "unknown agent '" << name << "'\n";
            return kExitError;
        }
        agents.push_back(*agent);
    }
    if (agents.empty()) {
        std::cerr << "no agents given\n";
        return kExitError;
    }

    pik::SolverConfig cfg = make_solver_config(opt);
    const std::string manifest_dir = std::filesystem::path(manifest_path).parent_path().string();
    const pik::BenchmarkReport report =
        pik::run_suite(manifest, manifest_dir, agents, runs, opt.seed, opt.workers, cfg);

    std::filesystem::create_directories(opt.out_dir);
    const auto report_path = std::filesystem::path(opt.out_dir) / (report.suite + "_report.json");
    {
        std::ofstream out(report_path);
        out << pik::serialize_report(report);
    }

    std::cout << "suite " << report.suite << " (max_attempts " << report.max_attempts << ", "
              << runs << " run(s)/puzzle)\n";
    for (const auto& [agent_name, agent_report] : report.per_agent)
        std::cout << "  " << agent_name << ": AUCCESS " << agent_report.auccess << "\n";
    std::cout << "report: " << report_path.string() << "\n";
    return kExitOk;
}

int cmd_render(const std::string& puzzle_path, const std::string& action_arg,
               const CommonOptions& opt) {
    const pik::PuzzleSpec puzzle = load_with_overrides(puzzle_path, opt);
    const pik::Action action = parse_action_arg(action_arg);
    const auto out = std::filesystem::path(opt.out_dir) / puzzle.name;
    const pik::RenderSummary summary = pik::render_rollout(puzzle, action, out.string(), opt.stride);
    std::cout << summary.frames_written << " frame(s) in " << out.string()
              << "; success=" << (summary.success ? "true" : "false")
              << " d_c=" << summary.closest_distance << " score=" << summary.score << "\n";
    return kExitOk;
}

int cmd_explain(const std::string& puzzle_path, const std::string& action_a,
                const std::string& action_b, const CommonOptions& opt) {
    const pik::PuzzleSpec puzzle = load_with_overrides(puzzle_path, opt);
    const pik::Action a = parse_action_arg(action_a);
    const pik::Action b = parse_action_arg(action_b);
    for (const auto* action : {&a, &b}) {
        if (!pik::placement_valid(puzzle, *action))
            throw pik::InvalidPlacement("action " + pik::action_to_json(*action).dump() +
                                        " is not placeable");
    }

    pik::SolverConfig cfg = make_solver_config(opt);
    const pik::CausalEffect ea = pik::causal_effect(puzzle, a, cfg.predictor);
    const pik::CausalEffect eb = pik::causal_effect(puzzle, b, cfg.predictor);
    pik::SimilarityBreakdown breakdown;
    pik::causal_sim(ea, eb, breakdown);

    std::cout << "action A: " << pik::action_to_json(a).dump()
              << " (t_event=" << ea.t_event << ")\n";
    std::cout << "action B: " << pik::action_to_json(b).dump()
              << " (t_event=" << eb.t_event << ")\n";
    std::cout << "object            cos       mag   obj_sim\n";
    for (const auto& [id, entry] : breakdown.per_object) {
        std::printf("%-14s %8.4f  %8.4f  %8.4f\n", id.c_str(), entry.cos, entry.mag,
                    entry.obj_sim);
    }
    std::printf("mean_obj_sim = %.6f\n", breakdown.mean_obj_sim);
    std::printf("causal_sim   = %.6f\n", breakdown.causal_sim);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal-kernel Bayesian-optimization workbench for 2D physics puzzles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", pik::kToolVersion);

    CommonOptions opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "Master random seed (default 0)");
        cmd->add_option("--out", opt.out_dir,
                        "Output directory (default $PIK_OUT_DIR or ./out)");
        cmd->add_option("--beta", opt.beta,
                        "Reward decay coefficient override (default from puzzle, else -0.005)");
        cmd->add_option("--kappa", opt.kappa, "UCB exploration weight (default 2)");
        cmd->add_option("--noise-position", opt.noise_position,
                        "Mental-simulation position sigma (default 0)");
        cmd->add_option("--noise-restitution", opt.noise_restitution,
                        "Mental-simulation restitution sigma (default 0.05)");
        cmd->add_option("--noise-action", opt.noise_action,
                        "Mental-simulation placement jitter sigma (default 3)");
        cmd->add_option("--predictor-noise-position", opt.predictor_noise_position,
                        "Causal-effect predictor position sigma (default 0 = perfect)");
        cmd->add_option("--predictor-noise-restitution", opt.predictor_noise_restitution,
                        "Causal-effect predictor restitution sigma (default 0)");
    };

    std::string puzzle_path, manifest_path, action_arg, action_b_arg;
    std::string agents_arg = "causal-pik,rbf-bo,random";
    int runs = 1;

    CLI::App* solve = app.add_subcommand("solve", "Solve one puzzle with the chosen agent");
    solve->add_option("puzzle", puzzle_path, "Puzzle document")->required();
    solve->add_option("--agent", opt.agent, "Agent: causal-pik | rbf-bo | random (default causal-pik)");
    solve->add_option("--max-attempts", opt.max_attempts, "Attempt budget (default 10)");
    add_common(solve);

    CLI::App* bench = app.add_subcommand("bench", "Run a benchmark suite and write a report");
    bench->add_option("manifest", manifest_path, "Suite manifest")->required();
    bench->add_option("--agents", agents_arg,
                      "Comma-separated agents (default causal-pik,rbf-bo,random)");
    bench->add_option("--runs", runs, "Seeded runs per puzzle per agent (default 1)");
    bench->add_option("--workers", opt.workers, "Worker threads; report independent of this (default 1)");
    add_common(bench);

    CLI::App* render = app.add_subcommand("render", "Execute one action and export SVG frames");
    render->add_option("puzzle", puzzle_path, "Puzzle document")->required();
    render->add_option("--action", action_arg, R"(Action JSON, e.g. {"tool":0,"x":300,"y":420})")
        ->required();
    render->add_option("--stride", opt.stride, "Timesteps between frames (default 10)");
    add_common(render);

    CLI::App* explain = app.add_subcommand("explain", "Causal-similarity breakdown of two actions");
    explain->add_option("puzzle", puzzle_path, "Puzzle document")->required();
    explain->add_option("--action-a", action_arg, "First action JSON")->required();
    explain->add_option("--action-b", action_b_arg, "Second action JSON")->required();
    add_common(explain);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (solve->parsed()) return cmd_solve(puzzle_path, opt);
        if (bench->parsed()) return cmd_bench(manifest_path, agents_arg, runs, opt);
        if (render->parsed()) return cmd_render(puzzle_path, action_arg, opt);
        if (explain->parsed()) return cmd_explain(puzzle_path, action_arg, action_b_arg, opt);
    } catch (const pik::InvalidPlacement& e) {
        std::cerr << "invalid placement: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
