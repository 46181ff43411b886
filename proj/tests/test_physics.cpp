#include <doctest.h>

#include <cmath>
#include <set>

#include "pik/physics.hpp"
#include "test_helpers.hpp"

using namespace pik;
using namespace pik::test;

namespace {

bool states_bitwise_equal(const SceneState& a, const SceneState& b) {
    if (a.t != b.t || a.bodies.size() != b.bodies.size()) return false;
    for (std::size_t i = 0; i < a.bodies.size(); ++i) {
        const BodySpec& x = a.bodies[i];
        const BodySpec& y = b.bodies[i];
        if (x.position != y.position || x.angle != y.angle) return false;
        if (x.linear_velocity != y.linear_velocity || x.angular_velocity != y.angular_velocity)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("step: free fall matches the one-step hand calculation") {
    SceneState s = scene_of({ball("b", 0.0, 0.0, 1.0, true)});
    const SceneState next = step(s, 0.1, {0.0, -10.0});
    const BodySpec& b = next.bodies[0];
    CHECK(b.linear_velocity.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b.linear_velocity.y == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(b.position.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b.position.y == doctest::Approx(-0.1).epsilon(1e-9));
    CHECK(next.t == 1);
}

TEST_CASE("step: static segment never moves under gravity") {
    SceneState s = scene_of({segment("floor", {0.0, 20.0}, {600.0, 20.0})});
    SceneState current = s;
    for (int i = 0; i < 50; ++i) current = step(current, kDt, {0.0, -300.0});
    CHECK(current.bodies[0].position == s.bodies[0].position);
    CHECK(current.bodies[0].angle == s.bodies[0].angle);
    CHECK(current.t == 50);
}

TEST_CASE("step: zero force keeps a resting ball unchanged") {
    SceneState s = scene_of({ball("b", 5.0, 7.0, 1.0, true)});
    const SceneState next = step(s, kDt, {0.0, 0.0});
    CHECK(next.bodies[0].position == s.bodies[0].position);
    CHECK(next.bodies[0].linear_velocity == Vec2{0.0, 0.0});
}

TEST_CASE("simulate: bitwise deterministic for fixed seed") {
    SceneState s = scene_of({
        ball("a", 100.0, 200.0, 10.0, true, {0.6, 0.3, 1.0}),
        box("block", 100.0, 60.0, 30.0, 10.0, true),
        segment("floor", {0.0, 20.0}, {600.0, 20.0}),
    });
    SimNoise noise{2.0, 0.05, 0.0, 1234};
    const SimResult r1 = simulate(s, 240, kDt, {0.0, -300.0}, noise);
    const SimResult r2 = simulate(s, 240, kDt, {0.0, -300.0}, noise);
    REQUIRE(r1.states.size() == 240);
    REQUIRE(r2.states.size() == 240);
    for (std::size_t i = 0; i < r1.states.size(); ++i)
        CHECK(states_bitwise_equal(r1.states[i], r2.states[i]));
    REQUIRE(r1.contacts.size() == r2.contacts.size());
}

TEST_CASE("simulate: zero-sigma noise equals noiseless rollout") {
    SceneState s = scene_of({
        ball("a", 100.0, 120.0, 10.0, true, {0.6, 0.3, 1.0}),
        segment("floor", {0.0, 20.0}, {600.0, 20.0}),
    });
    SimNoise zero{0.0, 0.0, 0.0, 99};
    const SimResult noisy = simulate(s, 180, kDt, {0.0, -300.0}, zero);
    const SimResult clean = simulate(s, 180, kDt, {0.0, -300.0}, std::nullopt);
    for (std::size_t i = 0; i < noisy.states.size(); ++i)
        CHECK(states_bitwise_equal(noisy.states[i], clean.states[i]));
}

TEST_CASE("simulate: restitution 0.5 bounce returns half the speed") {
    // No gravity: approach speed is exact at contact, rebound speed is
    // measurable at any later state.
    SceneState s = scene_of({
        ball("b", 300.0, 50.0, 10.0, true, {0.5, 0.0, 1.0}),
        segment("floor", {0.0, 20.0}, {600.0, 20.0}, {1.0, 0.0, 1.0}),
    });
    s.bodies[0].linear_velocity = {0.0, -240.0};
    const SimResult r = simulate(s, 120, kDt, {0.0, 0.0});
    double max_up = 0.0;
    for (const SceneState& state : r.states)
        max_up = std::max(max_up, state.bodies[0].linear_velocity.y);
    CHECK(max_up == doctest::Approx(120.0).epsilon(1e-6));
}

TEST_CASE("mechanical_energy: rest at reference height is zero") {
    SceneState s = scene_of({ball("b", 50.0, 0.0, 2.0, true)});
    CHECK(mechanical_energy(s, {0.0, -10.0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mechanical_energy: free fall follows the closed form") {
    // Exact update per step: v_n = -G n dt, y_n = H - G dt^2 n(n+1)/2.
    const double G = 10.0, H = 1000.0, dt = 1.0 / 600.0;
    SceneState s = scene_of({ball("b", 0.0, H, 1.0, true)});
    const double mass = body_mass(s.bodies[0]);
    const double e0 = mechanical_energy(s, {0.0, -G});
    SceneState current = s;
    for (int n = 1; n <= 60; ++n) {
        current = step(current, dt, {0.0, -G});
        const double vy = -G * n * dt;
        const double y = H - G * dt * dt * (n * (n + 1)) / 2.0;
        const double expected = mass * (0.5 * vy * vy + G * y);
        const double measured = mechanical_energy(current, {0.0, -G});
        CHECK(measured == doctest::Approx(expected).epsilon(1e-9));
        // With this dt and height the closed-form drift stays inside 1e-6 of e0.
        CHECK(std::abs(measured - e0) <= 1e-6 * e0);
    }
}

TEST_CASE("mechanical_energy: inelastic bounce dissipates") {
    SceneState s = scene_of({
        ball("b", 300.0, 100.0, 10.0, true, {0.5, 0.0, 1.0}),
        segment("floor", {0.0, 20.0}, {600.0, 20.0}),
    });
    const Vec2 g{0.0, -300.0};
    const double before = mechanical_energy(s, g);
    const SimResult r = simulate(s, 240, kDt, g);
    const double after = mechanical_energy(r.states.back(), g);
    CHECK(after < before);
}

TEST_CASE("dissipation: energy never increases beyond the correction budget") {
    SceneState s = scene_of({
        ball("a", 200.0, 300.0, 10.0, true, {0.7, 0.3, 1.0}),
        ball("b", 210.0, 120.0, 12.0, true, {0.4, 0.5, 1.0}),
        box("crate", 400.0, 200.0, 25.0, 15.0, true, {0.3, 0.6, 1.0}, 0.4),
        segment("floor", {0.0, 20.0}, {600.0, 20.0}),
        segment("wall_l", {5.0, 20.0}, {5.0, 500.0}),
        segment("wall_r", {595.0, 20.0}, {595.0, 500.0}),
    });
    const Vec2 g{0.0, -300.0};
    const double e0 = mechanical_energy(s, g);
    REQUIRE(e0 > 0.0);
    const SimResult r = simulate(s, 600, kDt, g);
    for (std::size_t i = 1; i < r.states.size(); ++i) {
        const double prev = mechanical_energy(r.states[i - 1], g);
        const double cur = mechanical_energy(r.states[i], g);
        CHECK(cur - prev <= 1e-3 * e0);
    }
}

TEST_CASE("mirror symmetry: x-mirrored scene yields the mirrored trajectory") {
    auto build = [](double sign) {
        SceneState s = scene_of({
            ball("b", sign * 120.0, 260.0, 10.0, true, {0.5, 0.3, 1.0}),
            box("ramp", sign * 160.0, 100.0, 40.0, 8.0, false, {0.2, 0.4, 1.0}, sign * 0.35),
            segment("floor", {sign * -400.0, 20.0}, {sign * 400.0, 20.0}),
        });
        s.bodies[0].linear_velocity = {sign * 35.0, 0.0};
        return s;
    };
    const SimResult plus = simulate(build(1.0), 180, kDt, {0.0, -300.0});
    const SimResult minus = simulate(build(-1.0), 180, kDt, {0.0, -300.0});
    for (std::size_t i = 0; i < plus.states.size(); ++i) {
        const BodySpec& a = plus.states[i].bodies[0];
        const BodySpec& b = minus.states[i].bodies[0];
        CHECK(std::abs(a.position.x + b.position.x) <= 1e-6);
        CHECK(std::abs(a.position.y - b.position.y) <= 1e-6);
        CHECK(std::abs(a.linear_velocity.x + b.linear_velocity.x) <= 1e-6);
        CHECK(std::abs(a.linear_velocity.y - b.linear_velocity.y) <= 1e-6);
    }
}

TEST_CASE("contact soundness: events match a brute-force proximity scan") {
    SceneState s = scene_of({
        ball("a", 100.0, 150.0, 10.0, true, {0.6, 0.3, 1.0}),
        ball("c", 104.0, 60.0, 12.0, true, {0.5, 0.3, 1.0}),
        segment("floor", {0.0, 20.0}, {600.0, 20.0}),
    });
    const SimResult r = simulate(s, 300, kDt, {0.0, -300.0});

    std::set<std::tuple<std::int64_t, std::string, std::string>> events;
    for (const ContactEvent& ev : r.contacts) {
        CHECK(ev.body_a < ev.body_b);
        events.insert({ev.t, ev.body_a, ev.body_b});
    }
    std::set<std::tuple<std::int64_t, std::string, std::string>> expected;
    for (const SceneState& state : r.states) {
        for (std::size_t i = 0; i < state.bodies.size(); ++i) {
            for (std::size_t j = i + 1; j < state.bodies.size(); ++j) {
                if (!state.bodies[i].dynamic && !state.bodies[j].dynamic) continue;
                if (shape_distance(state.bodies[i], state.bodies[j]) > kContactEpsilon) continue;
                std::string a = state.bodies[i].id, b = state.bodies[j].id;
                if (b < a) std::swap(a, b);
                expected.insert({state.t, a, b});
            }
        }
    }
    CHECK(events == expected);
}

TEST_CASE("static bodies are immobile across long interactions") {
    SceneState s = scene_of({
        ball("a", 300.0, 400.0, 15.0, true, {0.8, 0.2, 1.0}),
        box("shelf", 300.0, 200.0, 80.0, 10.0, false),
        segment("floor", {0.0, 20.0}, {600.0, 20.0}),
    });
    const SimResult r = simulate(s, 400, kDt, {0.0, -300.0});
    for (const SceneState& state : r.states) {
        for (std::size_t i = 1; i < state.bodies.size(); ++i) {
            CHECK(state.bodies[i].position == s.bodies[i].position);
            CHECK(state.bodies[i].angle == s.bodies[i].angle);
        }
    }
}

TEST_CASE("shape_distance: two circles of radius 10 at center distance 30") {
    const BodySpec a = ball("a", 0.0, 0.0, 10.0, true);
    const BodySpec b = ball("b", 30.0, 0.0, 10.0, true);
    CHECK(shape_distance(a, b) == doctest::Approx(10.0).epsilon(1e-12));
}
