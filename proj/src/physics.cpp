#include "pik/physics.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>

#include "pik/rng.hpp"

namespace pik {
namespace {

// Solver tuning. Position advance is split into kSubsteps collision substeps
// per step; velocities take the gravity kick once per full step.
constexpr int kSubsteps = 4;
constexpr int kVelocityIterations = 8;
constexpr double kBaumgarte = 0.2;
constexpr double kSlop = 0.05;                  // penetration allowance, world units
constexpr double kRestitutionThreshold = 30.0;  // world units/s; inelastic below

constexpr int kMaxHullVerts = 16;

// World-space shape: either a circle or a convex hull with n >= 2 vertices
// (segments are 2-vertex hulls).
struct WorldShape {
    bool is_circle = false;
    Vec2 center;
    double radius = 0.0;
    std::array<Vec2, kMaxHullVerts> v{};
    int n = 0;
};

struct SolverBody {
    WorldShape shape;
    Vec2 pos;
    double angle = 0.0;
    Vec2 vel;
    double omega = 0.0;
    double inv_mass = 0.0;
    double inv_inertia = 0.0;
    Material mat;
    bool dynamic = false;
    Vec2 aabb_lo;
    Vec2 aabb_hi;
};

void update_aabb(SolverBody& b) {
    if (b.shape.is_circle) {
        b.aabb_lo = b.shape.center - Vec2{b.shape.radius, b.shape.radius};
        b.aabb_hi = b.shape.center + Vec2{b.shape.radius, b.shape.radius};
        return;
    }
    Vec2 lo = b.shape.v[0], hi = b.shape.v[0];
    for (int i = 1; i < b.shape.n; ++i) {
        lo.x = std::min(lo.x, b.shape.v[i].x);
        lo.y = std::min(lo.y, b.shape.v[i].y);
        hi.x = std::max(hi.x, b.shape.v[i].x);
        hi.y = std::max(hi.y, b.shape.v[i].y);
    }
    b.aabb_lo = lo;
    b.aabb_hi = hi;
}

bool aabb_overlap(const SolverBody& a, const SolverBody& b, double margin) {
    return a.aabb_lo.x <= b.aabb_hi.x + margin && b.aabb_lo.x <= a.aabb_hi.x + margin &&
           a.aabb_lo.y <= b.aabb_hi.y + margin && b.aabb_lo.y <= a.aabb_hi.y + margin;
}

struct ContactPoint {
    Vec2 point;
    double penetration = 0.0;
    double accum_jn = 0.0;
    double accum_jt = 0.0;
};

struct Manifold {
    int a = 0;
    int b = 0;
    Vec2 normal;  // from a toward b
    int count = 0;
    std::array<ContactPoint, 2> pts{};
    double restitution = 0.0;
    double friction = 0.0;
};

double polygon_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

// Second moment of area about the origin for a CCW polygon.
double polygon_inertia_per_density(const std::vector<Vec2>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 p0 = v[i];
        const Vec2 p1 = v[(i + 1) % v.size()];
        const double c = cross(p0, p1);
        acc += c * (dot(p0, p0) + dot(p0, p1) + dot(p1, p1));
    }
    return acc / 12.0;
}

void compute_mass(const BodySpec& spec, SolverBody& out) {
    if (!spec.dynamic) {
        out.inv_mass = 0.0;
        out.inv_inertia = 0.0;
        return;
    }
    double mass = 0.0, inertia = 0.0;
    if (const auto* c = std::get_if<CircleShape>(&spec.shape)) {
        const double area = M_PI * c->radius * c->radius;
        mass = area * spec.material.density;
        inertia = 0.5 * mass * c->radius * c->radius;
    } else if (const auto* p = std::get_if<PolygonShape>(&spec.shape)) {
        const double area = polygon_area(p->vertices);
        mass = area * spec.material.density;
        inertia = polygon_inertia_per_density(p->vertices) * spec.material.density;
    } else {
        // Dynamic segments are rejected at validation; treat as static.
        out.inv_mass = 0.0;
        out.inv_inertia = 0.0;
        return;
    }
    out.inv_mass = mass > 0.0 ? 1.0 / mass : 0.0;
    out.inv_inertia = inertia > 0.0 ? 1.0 / inertia : 0.0;
}

WorldShape world_shape(const Shape& shape, Vec2 pos, double angle) {
    WorldShape w;
    if (const auto* c = std::get_if<CircleShape>(&shape)) {
        w.is_circle = true;
        w.center = pos;
        w.radius = c->radius;
    } else if (const auto* p = std::get_if<PolygonShape>(&shape)) {
        w.n = static_cast<int>(p->vertices.size());
        for (int i = 0; i < w.n; ++i) w.v[i] = pos + rotated(p->vertices[i], angle);
    } else {
        const auto& s = std::get<SegmentShape>(shape);
        w.n = 2;
        w.v[0] = pos + rotated(s.a, angle);
        w.v[1] = pos + rotated(s.b, angle);
    }
    return w;
}

int hull_edge_count(const WorldShape& h) { return h.n == 2 ? 1 : h.n; }

Vec2 edge_normal(const WorldShape& h, int i) {
    const Vec2 e = h.v[(i + 1) % h.n] - h.v[i];
    return normalized(Vec2{e.y, -e.x});  // outward for CCW winding
}

Vec2 closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len_sq = ab.norm_sq();
    if (len_sq <= 1e-24) return a;
    const double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
    return a + ab * t;
}

bool point_in_hull(Vec2 p, const WorldShape& h) {
    if (h.n < 3) return false;
    for (int i = 0; i < h.n; ++i) {
        const Vec2 e = h.v[(i + 1) % h.n] - h.v[i];
        if (cross(e, p - h.v[i]) < 0.0) return false;
    }
    return true;
}

// Signed distance from a point to the hull boundary: negative inside.
double point_hull_distance(Vec2 p, const WorldShape& h, Vec2* closest = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    Vec2 best_pt;
    const int edges = hull_edge_count(h);
    for (int i = 0; i < edges; ++i) {
        const Vec2 q = closest_point_on_segment(p, h.v[i], h.v[(i + 1) % h.n]);
        const double d = distance(p, q);
        if (d < best) {
            best = d;
            best_pt = q;
        }
    }
    if (closest) *closest = best_pt;
    return point_in_hull(p, h) ? -best : best;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    const double d1 = distance(a, closest_point_on_segment(a, c, d));
    const double d2 = distance(b, closest_point_on_segment(b, c, d));
    const double d3 = distance(c, closest_point_on_segment(c, a, b));
    const double d4 = distance(d, closest_point_on_segment(d, a, b));
    return std::min(std::min(d1, d2), std::min(d3, d4));
}

// Largest separation of hull b from the faces of hull a. Negative when the
// projections overlap on every face axis.
double max_face_separation(const WorldShape& a, const WorldShape& b, int* best_face) {
    double best = -std::numeric_limits<double>::infinity();
    int face = 0;
    for (int i = 0; i < a.n; ++i) {
        const Vec2 n = edge_normal(a, i);
        double min_proj = std::numeric_limits<double>::infinity();
        for (int j = 0; j < b.n; ++j)
            min_proj = std::min(min_proj, dot(n, b.v[j] - a.v[i]));
        if (min_proj > best) {
            best = min_proj;
            face = i;
        }
    }
    if (best_face) *best_face = face;
    return best;
}

double hull_hull_distance(const WorldShape& a, const WorldShape& b) {
    const double sep_a = max_face_separation(a, b, nullptr);
    const double sep_b = max_face_separation(b, a, nullptr);
    const double sep = std::max(sep_a, sep_b);
    if (sep < 0.0) return sep;  // overlapping: SAT depth
    double best = std::numeric_limits<double>::infinity();
    const int ea = hull_edge_count(a), eb = hull_edge_count(b);
    for (int i = 0; i < ea; ++i)
        for (int j = 0; j < eb; ++j)
            best = std::min(best, segment_segment_distance(a.v[i], a.v[(i + 1) % a.n],
                                                           b.v[j], b.v[(j + 1) % b.n]));
    return best;
}

double world_shape_distance(const WorldShape& a, const WorldShape& b) {
    if (a.is_circle && b.is_circle)
        return distance(a.center, b.center) - a.radius - b.radius;
    if (a.is_circle) return point_hull_distance(a.center, b, nullptr) - a.radius;
    if (b.is_circle) return point_hull_distance(b.center, a, nullptr) - b.radius;
    return hull_hull_distance(a, b);
}

// --- contact generation ---------------------------------------------------

bool collide_circle_circle(const WorldShape& a, const WorldShape& b, Manifold& m) {
    const Vec2 delta = b.center - a.center;
    const double d = delta.norm();
    const double pen = a.radius + b.radius - d;
    if (pen <= 0.0) return false;
    m.normal = d > 1e-12 ? delta / d : Vec2{0.0, 1.0};
    m.count = 1;
    m.pts[0].point = a.center + m.normal * (a.radius - 0.5 * pen);
    m.pts[0].penetration = pen;
    return true;
}

// Circle is body b; hull is body a. Normal points from hull toward circle.
bool collide_hull_circle(const WorldShape& hull, const WorldShape& circle, Manifold& m) {
    Vec2 closest;
    const double d = point_hull_distance(circle.center, hull, &closest);
    if (d >= 0.0) {
        const double pen = circle.radius - d;
        if (pen <= 0.0) return false;
        m.normal = d > 1e-12 ? (circle.center - closest) / d : edge_normal(hull, 0);
        m.pts[0].point = closest;
        m.pts[0].penetration = pen;
    } else {
        // Center inside: push out along the nearest face.
        double best = std::numeric_limits<double>::infinity();
        int face = 0;
        const int edges = hull_edge_count(hull);
        for (int i = 0; i < edges; ++i) {
            const Vec2 q = closest_point_on_segment(circle.center, hull.v[i],
                                                    hull.v[(i + 1) % hull.n]);
            const double dist_i = distance(circle.center, q);
            if (dist_i < best) {
                best = dist_i;
                face = i;
            }
        }
        m.normal = edge_normal(hull, face);
        m.pts[0].point = circle.center;
        m.pts[0].penetration = circle.radius + best;
    }
    m.count = 1;
    return true;
}

int clip_segment_to_line(std::array<Vec2, 2>& io, Vec2 n, double offset) {
    std::array<Vec2, 2> out;
    int count = 0;
    const double d0 = dot(n, io[0]) - offset;
    const double d1 = dot(n, io[1]) - offset;
    if (d0 <= 0.0) out[count++] = io[0];
    if (d1 <= 0.0) out[count++] = io[1];
    if (d0 * d1 < 0.0 && count < 2) {
        const double t = d0 / (d0 - d1);
        out[count++] = io[0] + (io[1] - io[0]) * t;
    }
    io = out;
    return count;
}

// SAT with reference-face clipping; up to two contact points.
bool collide_hull_hull(const WorldShape& a, const WorldShape& b, Manifold& m) {
    int face_a = 0, face_b = 0;
    const double sep_a = max_face_separation(a, b, &face_a);
    if (sep_a > 0.0) return false;
    const double sep_b = max_face_separation(b, a, &face_b);
    if (sep_b > 0.0) return false;

    const WorldShape* ref = &a;
    const WorldShape* inc = &b;
    int ref_face = face_a;
    bool flipped = false;
    // Prefer the axis of least penetration; small bias keeps the choice stable.
    if (sep_b > sep_a + 1e-9) {
        ref = &b;
        inc = &a;
        ref_face = face_b;
        flipped = true;
    }

    const Vec2 ref_n = edge_normal(*ref, ref_face);
    const Vec2 ref_v0 = ref->v[ref_face];
    const Vec2 ref_v1 = ref->v[(ref_face + 1) % ref->n];

    // Incident face: most anti-parallel to the reference normal.
    int inc_face = 0;
    double min_dot = std::numeric_limits<double>::infinity();
    const int inc_edges = hull_edge_count(*inc);
    for (int i = 0; i < inc_edges; ++i) {
        const double d = dot(ref_n, edge_normal(*inc, i));
        if (d < min_dot) {
            min_dot = d;
            inc_face = i;
        }
    }
    std::array<Vec2, 2> pts = {inc->v[inc_face], inc->v[(inc_face + 1) % inc->n]};

    // Clip against the side planes of the reference face.
    const Vec2 tangent = normalized(ref_v1 - ref_v0);
    if (clip_segment_to_line(pts, -tangent, dot(-tangent, ref_v0)) < 2) return false;
    if (clip_segment_to_line(pts, tangent, dot(tangent, ref_v1)) < 2) return false;

    m.count = 0;
    for (const Vec2& p : pts) {
        const double sep = dot(ref_n, p - ref_v0);
        if (sep <= 0.0) {
            ContactPoint cp;
            cp.point = p;
            cp.penetration = -sep;
            m.pts[m.count++] = cp;
        }
    }
    if (m.count == 0) return false;
    m.normal = flipped ? -ref_n : ref_n;  // from a toward b
    return true;
}

bool collide(const SolverBody& a, const SolverBody& b, Manifold& m) {
    const WorldShape& sa = a.shape;
    const WorldShape& sb = b.shape;
    if (sa.is_circle && sb.is_circle) return collide_circle_circle(sa, sb, m);
    if (!sa.is_circle && sb.is_circle) return collide_hull_circle(sa, sb, m);
    if (sa.is_circle && !sb.is_circle) {
        if (!collide_hull_circle(sb, sa, m)) return false;
        m.normal = -m.normal;
        return true;
    }
    return collide_hull_hull(sa, sb, m);
}

// --- solver ----------------------------------------------------------------

Vec2 velocity_at(const SolverBody& b, Vec2 point) {
    const Vec2 r = point - b.pos;
    return b.vel + Vec2{-b.omega * r.y, b.omega * r.x};
}

void apply_impulse(SolverBody& b, Vec2 impulse, Vec2 point) {
    b.vel += impulse * b.inv_mass;
    b.omega += b.inv_inertia * cross(point - b.pos, impulse);
}

void solve_velocity(std::vector<SolverBody>& bodies, std::vector<Manifold>& manifolds) {
    // Desired post-solve normal velocity per point: e * |approach speed| for
    // impacts above the threshold, 0 otherwise.
    std::vector<std::array<double, 2>> restitution_bias(manifolds.size());

    for (std::size_t mi = 0; mi < manifolds.size(); ++mi) {
        Manifold& m = manifolds[mi];
        SolverBody& a = bodies[m.a];
        SolverBody& b = bodies[m.b];
        for (int k = 0; k < m.count; ++k) {
            const Vec2 v_rel = velocity_at(b, m.pts[k].point) - velocity_at(a, m.pts[k].point);
            const double vn = dot(v_rel, m.normal);
            restitution_bias[mi][k] =
                vn < -kRestitutionThreshold ? -m.restitution * vn : 0.0;
        }
    }

    for (int iter = 0; iter < kVelocityIterations; ++iter) {
        for (std::size_t mi = 0; mi < manifolds.size(); ++mi) {
            Manifold& m = manifolds[mi];
            SolverBody& a = bodies[m.a];
            SolverBody& b = bodies[m.b];
            for (int k = 0; k < m.count; ++k) {
                ContactPoint& cp = m.pts[k];
                const Vec2 ra = cp.point - a.pos;
                const Vec2 rb = cp.point - b.pos;

                // Normal impulse toward the restitution target velocity.
                {
                    const Vec2 v_rel = velocity_at(b, cp.point) - velocity_at(a, cp.point);
                    const double vn = dot(v_rel, m.normal);
                    const double rna = cross(ra, m.normal);
                    const double rnb = cross(rb, m.normal);
                    const double k_n = a.inv_mass + b.inv_mass +
                                       a.inv_inertia * rna * rna + b.inv_inertia * rnb * rnb;
                    if (k_n > 0.0) {
                        double jn = -(vn - restitution_bias[mi][k]) / k_n;
                        const double old = cp.accum_jn;
                        cp.accum_jn = std::max(old + jn, 0.0);
                        jn = cp.accum_jn - old;
                        const Vec2 impulse = m.normal * jn;
                        apply_impulse(a, -impulse, cp.point);
                        apply_impulse(b, impulse, cp.point);
                    }
                }

                // Friction impulse, clamped by the Coulomb cone.
                {
                    const Vec2 tangent = m.normal.perp();
                    const Vec2 v_rel = velocity_at(b, cp.point) - velocity_at(a, cp.point);
                    const double vt = dot(v_rel, tangent);
                    const double rta = cross(ra, tangent);
                    const double rtb = cross(rb, tangent);
                    const double k_t = a.inv_mass + b.inv_mass +
                                       a.inv_inertia * rta * rta + b.inv_inertia * rtb * rtb;
                    if (k_t > 0.0) {
                        double jt = -vt / k_t;
                        const double max_jt = m.friction * cp.accum_jn;
                        const double old = cp.accum_jt;
                        cp.accum_jt = std::clamp(old + jt, -max_jt, max_jt);
                        jt = cp.accum_jt - old;
                        const Vec2 impulse = tangent * jt;
                        apply_impulse(a, -impulse, cp.point);
                        apply_impulse(b, impulse, cp.point);
                    }
                }
            }
        }
    }
}

void correct_positions(std::vector<SolverBody>& bodies, const std::vector<Manifold>& manifolds) {
    for (const Manifold& m : manifolds) {
        SolverBody& a = bodies[m.a];
        SolverBody& b = bodies[m.b];
        const double w = a.inv_mass + b.inv_mass;
        if (w <= 0.0) continue;
        double pen = 0.0;
        for (int k = 0; k < m.count; ++k) pen = std::max(pen, m.pts[k].penetration);
        const double corr = kBaumgarte * std::max(pen - kSlop, 0.0);
        if (corr <= 0.0) continue;
        a.pos -= m.normal * (corr * a.inv_mass / w);
        b.pos += m.normal * (corr * b.inv_mass / w);
    }
}

struct NoiseContext {
    Rng rng;
    double restitution_sigma = 0.0;
};

void find_manifolds(std::vector<SolverBody>& bodies, std::vector<Manifold>& out,
                    NoiseContext* noise) {
    out.clear();
    const int n = static_cast<int>(bodies.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!bodies[i].dynamic && !bodies[j].dynamic) continue;
            if (!aabb_overlap(bodies[i], bodies[j], 0.0)) continue;
            Manifold m;
            m.a = i;
            m.b = j;
            if (!collide(bodies[i], bodies[j], m)) continue;
            m.restitution = std::min(bodies[i].mat.restitution, bodies[j].mat.restitution);
            m.friction = std::sqrt(bodies[i].mat.friction * bodies[j].mat.friction);
            if (noise && noise->restitution_sigma > 0.0) {
                std::normal_distribution<double> jitter(0.0, noise->restitution_sigma);
                m.restitution = std::clamp(m.restitution + jitter(noise->rng), 0.0, 1.0);
            }
            out.push_back(m);
        }
    }
}

void refresh_world_shape(SolverBody& body, const BodySpec& spec) {
    body.shape = world_shape(spec.shape, body.pos, body.angle);
    update_aabb(body);
}

// One fixed step over solver bodies. Specs provide shapes and materials;
// poses and velocities live in `bodies`. Per substep: detect contacts at the
// current poses, resolve velocities, correct penetration, then advance
// positions — resting bodies stay put because impulses fire before motion.
void step_core(std::vector<SolverBody>& bodies, const std::vector<BodySpec>& specs,
               double dt, Vec2 gravity, NoiseContext* noise) {
    for (auto& b : bodies)
        if (b.dynamic) b.vel += gravity * dt;

    const double h = dt / kSubsteps;
    std::vector<Manifold> manifolds;
    for (int s = 0; s < kSubsteps; ++s) {
        find_manifolds(bodies, manifolds, noise);
        if (!manifolds.empty()) {
            solve_velocity(bodies, manifolds);
            correct_positions(bodies, manifolds);
        }
        for (std::size_t i = 0; i < bodies.size(); ++i) {
            if (!bodies[i].dynamic) continue;
            bodies[i].pos += bodies[i].vel * h;
            bodies[i].angle += bodies[i].omega * h;
            refresh_world_shape(bodies[i], specs[i]);
        }
    }
}

std::vector<SolverBody> make_solver_bodies(const SceneState& state) {
    std::vector<SolverBody> bodies(state.bodies.size());
    for (std::size_t i = 0; i < state.bodies.size(); ++i) {
        const BodySpec& spec = state.bodies[i];
        SolverBody& b = bodies[i];
        b.pos = spec.position;
        b.angle = spec.angle;
        b.vel = spec.linear_velocity;
        b.omega = spec.angular_velocity;
        b.mat = spec.material;
        b.dynamic = spec.dynamic;
        compute_mass(spec, b);
        refresh_world_shape(b, spec);
    }
    return bodies;
}

SceneState snapshot(const SceneState& reference, const std::vector<SolverBody>& bodies,
                    std::int64_t t) {
    SceneState out = reference;
    out.t = t;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        out.bodies[i].position = bodies[i].pos;
        out.bodies[i].angle = bodies[i].angle;
        out.bodies[i].linear_velocity = bodies[i].vel;
        out.bodies[i].angular_velocity = bodies[i].omega;
    }
    return out;
}

void scan_contacts(const std::vector<SolverBody>& bodies, const std::vector<BodySpec>& specs,
                   std::int64_t t, std::vector<ContactEvent>& out) {
    const int n = static_cast<int>(bodies.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!bodies[i].dynamic && !bodies[j].dynamic) continue;
            if (!aabb_overlap(bodies[i], bodies[j], kContactEpsilon)) continue;
            if (world_shape_distance(bodies[i].shape, bodies[j].shape) > kContactEpsilon)
                continue;
            ContactEvent ev;
            ev.t = t;
            if (specs[i].id < specs[j].id) {
                ev.body_a = specs[i].id;
                ev.body_b = specs[j].id;
            } else {
                ev.body_a = specs[j].id;
                ev.body_b = specs[i].id;
            }
            out.push_back(ev);
        }
    }
}

class SolverSceneProxy final : public SceneProxy {
  public:
    explicit SolverSceneProxy(const std::vector<SolverBody>& bodies) : bodies_(bodies) {}
    Vec2 position(int body_index) const override { return bodies_[body_index].pos; }
    double surface_distance(int body_a, int body_b) const override {
        return world_shape_distance(bodies_[body_a].shape, bodies_[body_b].shape);
    }

  private:
    const std::vector<SolverBody>& bodies_;
};

// Shared rollout driver: positions noise, steps, and per-state callback.
template <typename Observe>
void run_rollout(const SceneState& scene, int horizon, double dt, Vec2 gravity,
                 const std::optional<SimNoise>& noise, Observe&& observe) {
    auto bodies = make_solver_bodies(scene);

    NoiseContext ctx;
    NoiseContext* ctx_ptr = nullptr;
    if (noise && !noise->zero()) {
        ctx.rng = make_rng(noise->seed);
        ctx.restitution_sigma = noise->restitution_sigma;
        ctx_ptr = &ctx;
        if (noise->position_sigma > 0.0) {
            std::normal_distribution<double> jitter(0.0, noise->position_sigma);
            for (std::size_t i = 0; i < bodies.size(); ++i) {
                if (!bodies[i].dynamic) continue;
                bodies[i].pos += Vec2{jitter(ctx.rng), jitter(ctx.rng)};
                refresh_world_shape(bodies[i], scene.bodies[i]);
            }
        }
    }

    observe(scene.t, bodies);
    for (int i = 1; i < horizon; ++i) {
        step_core(bodies, scene.bodies, dt, gravity, ctx_ptr);
        observe(scene.t + i, bodies);
    }
}

}  // namespace

SceneState step(const SceneState& state, double dt, Vec2 gravity) {
    auto bodies = make_solver_bodies(state);
    step_core(bodies, state.bodies, dt, gravity, nullptr);
    return snapshot(state, bodies, state.t + 1);
}

SimResult simulate(const SceneState& scene, int horizon, double dt, Vec2 gravity,
                   const std::optional<SimNoise>& noise) {
    assert(horizon >= 1);
    SimResult result;
    result.states.reserve(horizon);
    run_rollout(scene, horizon, dt, gravity, noise,
                [&](std::int64_t t, const std::vector<SolverBody>& bodies) {
                    result.states.push_back(snapshot(scene, bodies, t));
                    scan_contacts(bodies, scene.bodies, t, result.contacts);
                });
    return result;
}

void simulate_stream(const SceneState& scene, int horizon, double dt, Vec2 gravity,
                     const std::optional<SimNoise>& noise,
                     const std::function<void(std::int64_t, const SceneProxy&)>& observe) {
    assert(horizon >= 1);
    run_rollout(scene, horizon, dt, gravity, noise,
                [&](std::int64_t t, const std::vector<SolverBody>& bodies) {
                    observe(t, SolverSceneProxy(bodies));
                });
}

double mechanical_energy(const SceneState& state, Vec2 gravity) {
    double energy = 0.0;
    for (const BodySpec& b : state.bodies) {
        if (!b.dynamic) continue;
        SolverBody sb;
        sb.dynamic = true;
        compute_mass(b, sb);
        const double mass = sb.inv_mass > 0.0 ? 1.0 / sb.inv_mass : 0.0;
        const double inertia = sb.inv_inertia > 0.0 ? 1.0 / sb.inv_inertia : 0.0;
        energy += 0.5 * mass * b.linear_velocity.norm_sq();
        energy += 0.5 * inertia * b.angular_velocity * b.angular_velocity;
        energy -= mass * dot(gravity, b.position);
    }
    return energy;
}

double shape_distance(const BodySpec& a, const BodySpec& b) {
    const WorldShape wa = world_shape(a.shape, a.position, a.angle);
    const WorldShape wb = world_shape(b.shape, b.position, b.angle);
    return world_shape_distance(wa, wb);
}

double body_mass(const BodySpec& body) {
    if (!body.dynamic) return 0.0;
    SolverBody sb;
    sb.dynamic = true;
    compute_mass(body, sb);
    return sb.inv_mass > 0.0 ? 1.0 / sb.inv_mass : 0.0;
}

}  // namespace pik
