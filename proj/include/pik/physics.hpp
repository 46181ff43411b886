#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pik/vec2.hpp"

namespace pik {

// Fixed integration timestep. All episode/horizon counts are in units of kDt.
inline constexpr double kDt = 1.0 / 60.0;

// Surface distance at or below which two bodies are reported as touching.
inline constexpr double kContactEpsilon = 0.5;

struct Material {
    double restitution = 0.5;  // [0,1]
    double friction = 0.5;     // >= 0
    double density = 1.0;      // mass per unit area, > 0
};

struct CircleShape {
    double radius = 1.0;
};

/// Convex polygon, counter-clockwise vertices in the body frame,
/// centroid at the body origin.
struct PolygonShape {
    std::vector<Vec2> vertices;
};

/// Line segment in the body frame. Segment bodies must be static.
struct SegmentShape {
    Vec2 a;
    Vec2 b;
};

using Shape = std::variant<CircleShape, PolygonShape, SegmentShape>;

struct BodySpec {
    std::string id;
    Shape shape;
    Vec2 position;
    double angle = 0.0;  // radians
    Vec2 linear_velocity;
    double angular_velocity = 0.0;  // rad/s
    bool dynamic = false;
    Material material;
};

/// Snapshot of every body at one timestep. Body order is stable across steps.
struct SceneState {
    std::int64_t t = 0;
    std::vector<BodySpec> bodies;
};

/// Touching pair at a timestep, normalized so body_a < body_b.
struct ContactEvent {
    std::int64_t t = 0;
    std::string body_a;
    std::string body_b;
};

/// Noise parameters for the probabilistic engine. All sigmas zero means the
/// rollout is bit-identical to the noiseless one.
struct SimNoise {
    double position_sigma = 0.0;       // initial-pose jitter, world units
    double restitution_sigma = 0.0;    // per-contact restitution jitter
    double action_jitter_sigma = 0.0;  // placement jitter, applied by callers
    std::uint64_t seed = 0;

    bool zero() const {
        return position_sigma == 0.0 && restitution_sigma == 0.0 &&
               action_jitter_sigma == 0.0;
    }
};

struct SimResult {
    std::vector<SceneState> states;    // exactly `horizon` states, first is the input
    std::vector<ContactEvent> contacts;
};

/// Advances the scene by one fixed step of semi-implicit Euler: velocities
/// take the full-dt gravity kick first, then positions advance in collision
/// substeps with impulse resolution between them. Static bodies never move.
SceneState step(const SceneState& state, double dt, Vec2 gravity);

/// Rolls the scene forward, returning `horizon` successive states (the input
/// state first) and every contact event observed at those states. Pure
/// function of (scene, horizon, noise seed).
SimResult simulate(const SceneState& scene, int horizon, double dt, Vec2 gravity,
                   const std::optional<SimNoise>& noise = std::nullopt);

/// Read-only view of the live solver state, indexed like SceneState.bodies.
class SceneProxy {
  public:
    virtual ~SceneProxy() = default;
    virtual Vec2 position(int body_index) const = 0;
    virtual double surface_distance(int body_a, int body_b) const = 0;
};

/// Streaming variant of simulate: calls `observe` once per emitted state
/// (input state first) without materializing snapshots. Produces the same
/// trajectory as simulate for identical inputs.
void simulate_stream(const SceneState& scene, int horizon, double dt, Vec2 gravity,
                     const std::optional<SimNoise>& noise,
                     const std::function<void(std::int64_t, const SceneProxy&)>& observe);

/// Kinetic plus gravitational potential energy of the dynamic bodies,
/// with potential zero at the origin.
double mechanical_energy(const SceneState& state, Vec2 gravity);

/// Signed surface distance between two bodies' shapes at their current poses:
/// positive when separated, zero at touch, negative when overlapping.
double shape_distance(const BodySpec& a, const BodySpec& b);

/// Body mass from shape area and material density (0 for static bodies).
double body_mass(const BodySpec& body);

}  // namespace pik
