#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pik/errors.hpp"
#include "pik/physics.hpp"

namespace pik {

// Reserved body id for the placed action object.
inline constexpr const char* kActionBodyId = "action";

struct ToolDescriptor {
    Shape shape;  // circle or centered convex polygon
    Material material;
};

/// Discrete set of tool shapes; the selector is a tool index.
struct ToolSetSpace {
    std::vector<ToolDescriptor> tools;
};

/// Ball of variable radius; the selector is a radius on the grid
/// min_radius + k * step, k = 0..count-1.
struct BallRadiusSpace {
    double min_radius = 2.0;
    double max_radius = 32.0;
    double step = 1.0;
    Material material;
};

struct ActionSpace {
    std::variant<ToolSetSpace, BallRadiusSpace> family;
    std::array<double, 2> x_range{0.0, 600.0};
    std::array<double, 2> y_range{0.0, 600.0};

    bool is_tool_set() const { return std::holds_alternative<ToolSetSpace>(family); }
    /// Number of selector values (tool count or radius grid size).
    int selector_count() const;
    /// Radius for grid index k (ball family only).
    double radius_at(int k) const;
};

/// The optimization variable: which object to place and where.
struct Action {
    std::variant<int, double> selector;  // tool index | ball radius
    Vec2 position;

    int tool_index() const { return std::get<int>(selector); }
    double ball_radius() const { return std::get<double>(selector); }
};

struct RegionGoal {
    std::string target;  // body whose center must enter the region
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

struct ContactGoal {
    std::string body_a;
    std::string body_b;
    double hold_seconds = 3.0;  // required uninterrupted contact
};

using GoalCondition = std::variant<RegionGoal, ContactGoal>;

struct RewardConfig {
    double beta = -0.005;  // decay per world unit; <= 0
};

struct PuzzleSpec {
    std::string name;
    SceneState scene;  // t = 0, validated, not already solved
    ActionSpace action_space;
    GoalCondition goal;
    int episode_steps = 600;
    Vec2 gravity{0.0, -300.0};
    RewardConfig reward_cfg;

    // Set by validate(): dist(s_0, goal), the reward normalizer.
    double initial_goal_distance = 0.0;
};

struct Trajectory {
    std::vector<SceneState> states;  // empty when executed without collection
    std::vector<ContactEvent> contacts;
    bool success = false;
    double closest_distance = 0.0;  // d_c, over timesteps t >= 1
    std::optional<std::int64_t> solved_at_t;
};

struct ExecuteResult {
    Trajectory trajectory;
    double score = 0.0;
};

/// Parses and validates a puzzle document (strict schema, unknown keys are
/// errors). Throws ParseError / ValidationError with diagnostics.
PuzzleSpec load_puzzle(const std::string& path);
PuzzleSpec parse_puzzle(const std::string& text, const std::string& origin = "<string>");

/// Validates a programmatically built spec and computes the cached
/// initial goal distance. Throws ValidationError.
void validate_puzzle(PuzzleSpec& puzzle);

/// True when the selector and position lie within the action space
/// (ball radii must sit on the radius grid).
bool action_in_space(const ActionSpace& space, const Action& action);

/// True when the action is in-space, fully inside the placement bounds and
/// overlap-free. Never throws; the cheap check used in solver loops.
bool placement_valid(const PuzzleSpec& puzzle, const Action& action);

/// Initial scene with the action object inserted as a resting dynamic body
/// (id "action"). Throws InvalidPlacement.
SceneState place_action_object(const PuzzleSpec& puzzle, const Action& action);

/// Full-episode rollout and Eq-style score. Noiseless when noise is empty
/// (real execution); noisy for mental simulation, including placement jitter.
/// collect_states=false skips snapshot storage for scoring-only rollouts.
ExecuteResult execute(const PuzzleSpec& puzzle, const Action& action,
                      const std::optional<SimNoise>& noise = std::nullopt,
                      bool collect_states = true);

/// (1 - d_c/d_0) * exp(beta * d_c) for d_c < d_0, else 0.
double reward(double d_c, double d_0, const RewardConfig& cfg);

/// Region goal: Euclidean distance from the target body center to the region
/// (0 inside). Contact goal: surface distance between the two bodies,
/// clamped at 0.
double goal_distance(const SceneState& state, const GoalCondition& goal);

/// dist(s_0, goal): the counterfactual no-action baseline used as the reward
/// normalizer. Cached in the spec at validation.
double counterfactual_distance(const PuzzleSpec& puzzle);

/// Consecutive contact steps required by a contact goal.
int required_hold_steps(const ContactGoal& goal, double dt = kDt);

int body_index(const SceneState& scene, const std::string& id);  // -1 if absent

}  // namespace pik
