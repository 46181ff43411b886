#include "pik/puzzle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pik/json_util.hpp"
#include "pik/rng.hpp"

namespace pik {
namespace {

using jsonutil::check_keys;
using jsonutil::get_bool;
using jsonutil::get_int;
using jsonutil::get_number;
using jsonutil::get_string;
using jsonutil::json;

// Distinct RNG streams for the two noise consumers of a mental rollout.
constexpr std::uint64_t kPlacementStream = 0x706c6163ULL;
constexpr std::uint64_t kSimStream = 0x73696d75ULL;

Vec2 parse_vec(const json& obj, const std::string& ctx) {
    check_keys(obj, ctx, {"x", "y"});
    return {get_number(obj, "x", ctx), get_number(obj, "y", ctx)};
}

Shape parse_shape(const json& obj, const std::string& ctx) {
    check_keys(obj, ctx, {"kind"}, {"radius", "vertices", "a", "b"});
    const std::string kind = get_string(obj, "kind", ctx);
    if (kind == "circle") {
        check_keys(obj, ctx, {"kind", "radius"});
        return CircleShape{get_number(obj, "radius", ctx)};
    }
    if (kind == "polygon") {
        check_keys(obj, ctx, {"kind", "vertices"});
        const auto& verts = obj.at("vertices");
        if (!verts.is_array()) throw ParseError(ctx + ".vertices: expected an array");
        PolygonShape poly;
        for (std::size_t i = 0; i < verts.size(); ++i)
            poly.vertices.push_back(parse_vec(verts[i], ctx + ".vertices[" + std::to_string(i) + "]"));
        return poly;
    }
    if (kind == "segment") {
        check_keys(obj, ctx, {"kind", "a", "b"});
        return SegmentShape{parse_vec(obj.at("a"), ctx + ".a"), parse_vec(obj.at("b"), ctx + ".b")};
    }
    throw ParseError(ctx + ".kind: unknown shape kind '" + kind + "'");
}

Material parse_material(const json& obj, const std::string& ctx) {
    check_keys(obj, ctx, {"restitution", "friction", "density"});
    Material m;
    m.restitution = get_number(obj, "restitution", ctx);
    m.friction = get_number(obj, "friction", ctx);
    m.density = get_number(obj, "density", ctx);
    return m;
}

BodySpec parse_body(const json& obj, const std::string& ctx) {
    check_keys(obj, ctx, {"id", "shape", "pose", "dynamic", "material"});
    BodySpec b;
    b.id = get_string(obj, "id", ctx);
    b.shape = parse_shape(obj.at("shape"), ctx + ".shape");
    const auto& pose = obj.at("pose");
    check_keys(pose, ctx + ".pose", {"x", "y", "angle"});
    b.position = {get_number(pose, "x", ctx + ".pose"), get_number(pose, "y", ctx + ".pose")};
    b.angle = get_number(pose, "angle", ctx + ".pose");
    b.dynamic = get_bool(obj, "dynamic", ctx);
    b.material = parse_material(obj.at("material"), ctx + ".material");
    return b;
}

std::array<double, 2> parse_range(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ParseError(ctx + ": expected [lo, hi]");
    return {v[0].get<double>(), v[1].get<double>()};
}

ActionSpace parse_action_space(const json& obj, const std::string& ctx) {
    ActionSpace space;
    if (!obj.is_object() || !obj.contains("family") || !obj.at("family").is_string())
        throw ParseError(ctx + ": missing or invalid 'family'");
    const std::string family = obj.at("family").get<std::string>();
    if (family == "tool-set") {
        check_keys(obj, ctx, {"family", "tools", "x_range", "y_range"});
        ToolSetSpace tools;
        const auto& arr = obj.at("tools");
        if (!arr.is_array()) throw ParseError(ctx + ".tools: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string tctx = ctx + ".tools[" + std::to_string(i) + "]";
            check_keys(arr[i], tctx, {"shape"}, {"material"});
            ToolDescriptor tool;
            tool.shape = parse_shape(arr[i].at("shape"), tctx + ".shape");
            if (arr[i].contains("material"))
                tool.material = parse_material(arr[i].at("material"), tctx + ".material");
            tools.tools.push_back(std::move(tool));
        }
        space.family = std::move(tools);
    } else if (family == "ball-radius") {
        check_keys(obj, ctx, {"family", "radius_min", "radius_max", "radius_step", "x_range", "y_range"},
                   {"material"});
        BallRadiusSpace ball;
        ball.min_radius = get_number(obj, "radius_min", ctx);
        ball.max_radius = get_number(obj, "radius_max", ctx);
        ball.step = get_number(obj, "radius_step", ctx);
        if (obj.contains("material")) ball.material = parse_material(obj.at("material"), ctx + ".material");
        space.family = ball;
    } else {
        throw ParseError(ctx + ".family: unknown family '" + family + "'");
    }
    space.x_range = parse_range(obj.at("x_range"), ctx + ".x_range");
    space.y_range = parse_range(obj.at("y_range"), ctx + ".y_range");
    return space;
}

GoalCondition parse_goal(const json& obj, const std::string& ctx) {
    if (!obj.is_object() || !obj.contains("kind") || !obj.at("kind").is_string())
        throw ParseError(ctx + ": missing or invalid 'kind'");
    const std::string kind = obj.at("kind").get<std::string>();
    if (kind == "region") {
        check_keys(obj, ctx, {"kind", "target", "region"});
        const auto& r = obj.at("region");
        check_keys(r, ctx + ".region", {"x0", "y0", "x1", "y1"});
        RegionGoal goal;
        goal.target = get_string(obj, "target", ctx);
        goal.x0 = get_number(r, "x0", ctx + ".region");
        goal.y0 = get_number(r, "y0", ctx + ".region");
        goal.x1 = get_number(r, "x1", ctx + ".region");
        goal.y1 = get_number(r, "y1", ctx + ".region");
        return goal;
    }
    if (kind == "contact") {
        check_keys(obj, ctx, {"kind", "body_a", "body_b", "hold_seconds"});
        ContactGoal goal;
        goal.body_a = get_string(obj, "body_a", ctx);
        goal.body_b = get_string(obj, "body_b", ctx);
        goal.hold_seconds = get_number(obj, "hold_seconds", ctx);
        return goal;
    }
    throw ParseError(ctx + ".kind: unknown goal kind '" + kind + "'");
}

// --- shape validation helpers ----------------------------------------------

double polygon_signed_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

void validate_polygon(const std::vector<Vec2>& v, const std::string& ctx) {
    if (v.size() < 3) throw ValidationError(ctx + ": polygon needs at least 3 vertices");
    const double area = polygon_signed_area(v);
    if (area <= 0.0)
        throw ValidationError(ctx + ": polygon vertices must be counter-clockwise");
    double scale = 0.0;
    for (const Vec2& p : v) scale = std::max(scale, std::max(std::abs(p.x), std::abs(p.y)));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 e0 = v[(i + 1) % v.size()] - v[i];
        const Vec2 e1 = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
        if (cross(e0, e1) < -1e-9 * (1.0 + scale * scale))
            throw ValidationError(ctx + ": polygon must be convex");
    }
    Vec2 centroid{0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double c = cross(v[i], v[(i + 1) % v.size()]);
        centroid += (v[i] + v[(i + 1) % v.size()]) * c;
    }
    centroid = centroid / (6.0 * area);
    if (centroid.norm() > 1e-6 * (1.0 + scale))
        throw ValidationError(ctx + ": polygon centroid must sit at the body origin");
}

void validate_shape(const Shape& shape, bool dynamic, const std::string& ctx) {
    if (const auto* c = std::get_if<CircleShape>(&shape)) {
        if (!(c->radius > 0.0)) throw ValidationError(ctx + ": circle radius must be positive");
    } else if (const auto* p = std::get_if<PolygonShape>(&shape)) {
        for (const Vec2& v : p->vertices)
            if (!v.finite()) throw ValidationError(ctx + ": non-finite polygon vertex");
        validate_polygon(p->vertices, ctx);
    } else {
        const auto& s = std::get<SegmentShape>(shape);
        if (!s.a.finite() || !s.b.finite() || (s.a - s.b).norm() <= 0.0)
            throw ValidationError(ctx + ": degenerate segment");
        if (dynamic) throw ValidationError(ctx + ": segment bodies must be static");
    }
}

void validate_material(const Material& m, const std::string& ctx) {
    if (!(m.restitution >= 0.0 && m.restitution <= 1.0))
        throw ValidationError(ctx + ": restitution must be in [0,1]");
    if (!(m.friction >= 0.0)) throw ValidationError(ctx + ": friction must be >= 0");
    if (!(m.density > 0.0)) throw ValidationError(ctx + ": density must be positive");
}

double point_rect_distance(Vec2 p, const RegionGoal& r) {
    const double dx = std::max({r.x0 - p.x, 0.0, p.x - r.x1});
    const double dy = std::max({r.y0 - p.y, 0.0, p.y - r.y1});
    return std::hypot(dx, dy);
}

BodySpec make_action_body(const ActionSpace& space, const Action& action) {
    BodySpec body;
    body.id = kActionBodyId;
    body.dynamic = true;
    body.position = action.position;
    if (space.is_tool_set()) {
        const auto& tools = std::get<ToolSetSpace>(space.family);
        const auto& tool = tools.tools.at(static_cast<std::size_t>(action.tool_index()));
        body.shape = tool.shape;
        body.material = tool.material;
    } else {
        const auto& ball = std::get<BallRadiusSpace>(space.family);
        body.shape = CircleShape{action.ball_radius()};
        body.material = ball.material;
    }
    return body;
}

// Placement rejection reason, or empty when the placement is acceptable.
std::string placement_issue(const PuzzleSpec& puzzle, const Action& action) {
    if (!action_in_space(puzzle.action_space, action)) return "action outside the action space";

    const BodySpec body = make_action_body(puzzle.action_space, action);

    // The action object must lie fully inside the placement bounds.
    double lo_x, hi_x, lo_y, hi_y;
    if (const auto* c = std::get_if<CircleShape>(&body.shape)) {
        lo_x = body.position.x - c->radius;
        hi_x = body.position.x + c->radius;
        lo_y = body.position.y - c->radius;
        hi_y = body.position.y + c->radius;
    } else {
        const auto& poly = std::get<PolygonShape>(body.shape);
        lo_x = lo_y = std::numeric_limits<double>::infinity();
        hi_x = hi_y = -std::numeric_limits<double>::infinity();
        for (const Vec2& v : poly.vertices) {
            const Vec2 w = body.position + v;  // placed at angle 0
            lo_x = std::min(lo_x, w.x);
            hi_x = std::max(hi_x, w.x);
            lo_y = std::min(lo_y, w.y);
            hi_y = std::max(hi_y, w.y);
        }
    }
    if (lo_x < puzzle.action_space.x_range[0] || hi_x > puzzle.action_space.x_range[1] ||
        lo_y < puzzle.action_space.y_range[0] || hi_y > puzzle.action_space.y_range[1])
        return "action object extends outside the placement bounds";

    for (const BodySpec& other : puzzle.scene.bodies)
        if (shape_distance(body, other) < 0.0)
            return "action object overlaps body '" + other.id + "'";
    return {};
}

// Per-state goal bookkeeping shared by the stored and streaming rollouts.
class GoalTracker {
  public:
    GoalTracker(const PuzzleSpec& puzzle, const SceneState& placed_scene)
        : puzzle_(puzzle), hold_steps_(0) {
        if (const auto* region = std::get_if<RegionGoal>(&puzzle.goal)) {
            target_a_ = body_index(placed_scene, region->target);
        } else {
            const auto& contact = std::get<ContactGoal>(puzzle.goal);
            target_a_ = body_index(placed_scene, contact.body_a);
            target_b_ = body_index(placed_scene, contact.body_b);
            hold_steps_ = required_hold_steps(contact);
        }
    }

    // `surface` is the goal-pair surface distance (contact goals only);
    // `target_pos` the target body center (region goals only).
    void observe(std::int64_t t, Vec2 target_pos, double surface) {
        double dist;
        if (std::holds_alternative<RegionGoal>(puzzle_.goal)) {
            dist = point_rect_distance(target_pos, std::get<RegionGoal>(puzzle_.goal));
            if (t >= 1 && dist == 0.0 && !solved_at_) solved_at_ = t;
        } else {
            dist = std::max(surface, 0.0);
            if (surface <= kContactEpsilon)
                ++run_length_;
            else
                run_length_ = 0;
            if (run_length_ >= hold_steps_ && !solved_at_) solved_at_ = t;
        }
        if (t >= 1) closest_ = std::min(closest_, dist);
    }

    int target_a() const { return target_a_; }
    int target_b() const { return target_b_; }
    bool needs_pair_distance() const { return std::holds_alternative<ContactGoal>(puzzle_.goal); }

    double closest() const { return closest_ == std::numeric_limits<double>::infinity() ? 0.0 : closest_; }
    std::optional<std::int64_t> solved_at() const { return solved_at_; }

  private:
    const PuzzleSpec& puzzle_;
    int target_a_ = -1;
    int target_b_ = -1;
    int hold_steps_ = 0;
    int run_length_ = 0;
    double closest_ = std::numeric_limits<double>::infinity();
    std::optional<std::int64_t> solved_at_;
};

}  // namespace

int ActionSpace::selector_count() const {
    if (is_tool_set()) return static_cast<int>(std::get<ToolSetSpace>(family).tools.size());
    const auto& b = std::get<BallRadiusSpace>(family);
    return static_cast<int>(std::floor((b.max_radius - b.min_radius) / b.step + 1e-9)) + 1;
}

double ActionSpace::radius_at(int k) const {
    const auto& b = std::get<BallRadiusSpace>(family);
    return b.min_radius + k * b.step;
}

PuzzleSpec load_puzzle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_puzzle(buffer.str(), path);
}

PuzzleSpec parse_puzzle(const std::string& text, const std::string& origin) {
    const json doc = jsonutil::parse(text, origin);
    check_keys(doc, origin, {"name", "gravity", "episode_steps", "bodies", "action_space", "goal"},
               {"reward"});

    PuzzleSpec puzzle;
    puzzle.name = get_string(doc, "name", origin);
    puzzle.gravity = parse_vec(doc.at("gravity"), origin + ".gravity");
    puzzle.episode_steps = get_int(doc, "episode_steps", origin);

    const auto& bodies = doc.at("bodies");
    if (!bodies.is_array()) throw ParseError(origin + ".bodies: expected an array");
    puzzle.scene.t = 0;
    for (std::size_t i = 0; i < bodies.size(); ++i)
        puzzle.scene.bodies.push_back(parse_body(bodies[i], origin + ".bodies[" + std::to_string(i) + "]"));

    puzzle.action_space = parse_action_space(doc.at("action_space"), origin + ".action_space");
    puzzle.goal = parse_goal(doc.at("goal"), origin + ".goal");
    if (doc.contains("reward")) {
        check_keys(doc.at("reward"), origin + ".reward", {"beta"});
        puzzle.reward_cfg.beta = get_number(doc.at("reward"), "beta", origin + ".reward");
    }

    validate_puzzle(puzzle);
    return puzzle;
}

void validate_puzzle(PuzzleSpec& puzzle) {
    const std::string ctx = "puzzle '" + puzzle.name + "'";
    if (puzzle.name.empty()) throw ValidationError("puzzle name must be non-empty");
    if (puzzle.episode_steps < 1) throw ValidationError(ctx + ": episode_steps must be >= 1");
    if (!puzzle.gravity.finite()) throw ValidationError(ctx + ": gravity must be finite");
    if (puzzle.scene.t != 0) throw ValidationError(ctx + ": scene must start at t = 0");
    if (puzzle.scene.bodies.empty()) throw ValidationError(ctx + ": scene has no bodies");

    int dynamic_count = 0;
    for (const BodySpec& b : puzzle.scene.bodies) {
        const std::string bctx = ctx + ", body '" + b.id + "'";
        if (b.id.empty()) throw ValidationError(ctx + ": body id must be non-empty");
        if (b.id == kActionBodyId)
            throw ValidationError(bctx + ": id '" + std::string(kActionBodyId) + "' is reserved");
        if (!b.position.finite() || !std::isfinite(b.angle))
            throw ValidationError(bctx + ": non-finite pose");
        if (!b.dynamic && (b.linear_velocity.norm_sq() != 0.0 || b.angular_velocity != 0.0))
            throw ValidationError(bctx + ": static bodies must have zero velocity");
        validate_shape(b.shape, b.dynamic, bctx);
        validate_material(b.material, bctx);
        dynamic_count += b.dynamic ? 1 : 0;
    }
    for (std::size_t i = 0; i < puzzle.scene.bodies.size(); ++i)
        for (std::size_t j = i + 1; j < puzzle.scene.bodies.size(); ++j)
            if (puzzle.scene.bodies[i].id == puzzle.scene.bodies[j].id)
                throw ValidationError(ctx + ": duplicate body id '" + puzzle.scene.bodies[i].id + "'");
    if (dynamic_count == 0) throw ValidationError(ctx + ": at least one dynamic body is required");

    // Action space.
    const ActionSpace& space = puzzle.action_space;
    if (!(space.x_range[1] > space.x_range[0]) || !(space.y_range[1] > space.y_range[0]))
        throw ValidationError(ctx + ": action-space ranges must be non-degenerate");
    if (space.is_tool_set()) {
        const auto& tools = std::get<ToolSetSpace>(space.family);
        if (tools.tools.empty()) throw ValidationError(ctx + ": tool set must be non-empty");
        for (std::size_t i = 0; i < tools.tools.size(); ++i) {
            const std::string tctx = ctx + ", tool " + std::to_string(i);
            if (std::holds_alternative<SegmentShape>(tools.tools[i].shape))
                throw ValidationError(tctx + ": segment tools are not allowed");
            validate_shape(tools.tools[i].shape, true, tctx);
            validate_material(tools.tools[i].material, tctx);
        }
    } else {
        const auto& ball = std::get<BallRadiusSpace>(space.family);
        if (!(ball.min_radius > 0.0) || !(ball.max_radius >= ball.min_radius) || !(ball.step > 0.0))
            throw ValidationError(ctx + ": ball radius grid must satisfy 0 < min <= max, step > 0");
        validate_material(ball.material, ctx + ", action ball");
    }

    // Goal.
    if (const auto* region = std::get_if<RegionGoal>(&puzzle.goal)) {
        if (body_index(puzzle.scene, region->target) < 0)
            throw ValidationError(ctx + ": goal references missing body '" + region->target + "'");
        if (!(region->x1 > region->x0) || !(region->y1 > region->y0))
            throw ValidationError(ctx + ": goal region must be non-degenerate");
    } else {
        const auto& contact = std::get<ContactGoal>(puzzle.goal);
        for (const std::string& id : {contact.body_a, contact.body_b})
            if (body_index(puzzle.scene, id) < 0)
                throw ValidationError(ctx + ": goal references missing body '" + id + "'");
        if (contact.body_a == contact.body_b)
            throw ValidationError(ctx + ": contact goal bodies must differ");
        if (!(contact.hold_seconds > 0.0))
            throw ValidationError(ctx + ": hold_seconds must be positive");
    }
    if (!(puzzle.reward_cfg.beta <= 0.0)) throw ValidationError(ctx + ": reward beta must be <= 0");

    puzzle.initial_goal_distance = goal_distance(puzzle.scene, puzzle.goal);
    if (!(puzzle.initial_goal_distance > 0.0))
        throw ValidationError(ctx + ": initial scene already satisfies the goal");
}

bool action_in_space(const ActionSpace& space, const Action& action) {
    if (!action.position.finite()) return false;
    if (action.position.x < space.x_range[0] || action.position.x > space.x_range[1]) return false;
    if (action.position.y < space.y_range[0] || action.position.y > space.y_range[1]) return false;
    if (space.is_tool_set()) {
        if (!std::holds_alternative<int>(action.selector)) return false;
        const int idx = action.tool_index();
        return idx >= 0 && idx < space.selector_count();
    }
    if (!std::holds_alternative<double>(action.selector)) return false;
    const auto& ball = std::get<BallRadiusSpace>(space.family);
    const double r = action.ball_radius();
    if (!(r >= ball.min_radius - 1e-9 && r <= ball.max_radius + 1e-9)) return false;
    const double k = std::round((r - ball.min_radius) / ball.step);
    return std::abs(ball.min_radius + k * ball.step - r) <= 1e-6;
}

bool placement_valid(const PuzzleSpec& puzzle, const Action& action) {
    return placement_issue(puzzle, action).empty();
}

SceneState place_action_object(const PuzzleSpec& puzzle, const Action& action) {
    const std::string issue = placement_issue(puzzle, action);
    if (!issue.empty()) throw InvalidPlacement(puzzle.name + ": " + issue);
    SceneState scene = puzzle.scene;
    scene.bodies.push_back(make_action_body(puzzle.action_space, action));
    return scene;
}

ExecuteResult execute(const PuzzleSpec& puzzle, const Action& action,
                      const std::optional<SimNoise>& noise, bool collect_states) {
    Action actual = action;
    std::optional<SimNoise> sim_noise;
    if (noise && !noise->zero()) {
        if (noise->action_jitter_sigma > 0.0) {
            Rng rng = make_rng(mix_seed(noise->seed, kPlacementStream));
            std::normal_distribution<double> jitter(0.0, noise->action_jitter_sigma);
            for (int attempt = 0; attempt < 10; ++attempt) {
                Action candidate = action;
                candidate.position += Vec2{jitter(rng), jitter(rng)};
                if (placement_valid(puzzle, candidate)) {
                    actual = candidate;
                    break;
                }
            }
        }
        SimNoise s;
        s.position_sigma = noise->position_sigma;
        s.restitution_sigma = noise->restitution_sigma;
        s.seed = mix_seed(noise->seed, kSimStream);
        if (!s.zero()) sim_noise = s;
    }

    const SceneState placed = place_action_object(puzzle, actual);
    const int horizon = puzzle.episode_steps + 1;

    GoalTracker tracker(puzzle, placed);
    ExecuteResult result;

    if (collect_states) {
        SimResult sim = simulate(placed, horizon, kDt, puzzle.gravity, sim_noise);
        for (const SceneState& state : sim.states) {
            Vec2 target_pos;
            double surface = 0.0;
            if (tracker.needs_pair_distance())
                surface = shape_distance(state.bodies[tracker.target_a()],
                                         state.bodies[tracker.target_b()]);
            else
                target_pos = state.bodies[tracker.target_a()].position;
            tracker.observe(state.t, target_pos, surface);
        }
        result.trajectory.states = std::move(sim.states);
        result.trajectory.contacts = std::move(sim.contacts);
    } else {
        simulate_stream(placed, horizon, kDt, puzzle.gravity, sim_noise,
                        [&](std::int64_t t, const SceneProxy& proxy) {
                            Vec2 target_pos;
                            double surface = 0.0;
                            if (tracker.needs_pair_distance())
                                surface = proxy.surface_distance(tracker.target_a(), tracker.target_b());
                            else
                                target_pos = proxy.position(tracker.target_a());
                            tracker.observe(t, target_pos, surface);
                        });
    }

    result.trajectory.closest_distance = tracker.closest();
    result.trajectory.solved_at_t = tracker.solved_at();
    result.trajectory.success = tracker.solved_at().has_value();
    result.score = reward(result.trajectory.closest_distance, counterfactual_distance(puzzle),
                          puzzle.reward_cfg);
    return result;
}

double reward(double d_c, double d_0, const RewardConfig& cfg) {
    if (!(d_c < d_0)) return 0.0;
    return (1.0 - d_c / d_0) * std::exp(cfg.beta * d_c);
}

double goal_distance(const SceneState& state, const GoalCondition& goal) {
    if (const auto* region = std::get_if<RegionGoal>(&goal)) {
        const int idx = body_index(state, region->target);
        return point_rect_distance(state.bodies.at(idx).position, *region);
    }
    const auto& contact = std::get<ContactGoal>(goal);
    const int a = body_index(state, contact.body_a);
    const int b = body_index(state, contact.body_b);
    return std::max(shape_distance(state.bodies.at(a), state.bodies.at(b)), 0.0);
}

double counterfactual_distance(const PuzzleSpec& puzzle) {
    if (puzzle.initial_goal_distance > 0.0) return puzzle.initial_goal_distance;
    return goal_distance(puzzle.scene, puzzle.goal);
}

int required_hold_steps(const ContactGoal& goal, double dt) {
    return static_cast<int>(std::ceil(goal.hold_seconds / dt - 1e-9));
}

int body_index(const SceneState& scene, const std::string& id) {
    for (std::size_t i = 0; i < scene.bodies.size(); ++i)
        if (scene.bodies[i].id == id) return static_cast<int>(i);
    return -1;
}

}  // namespace pik
