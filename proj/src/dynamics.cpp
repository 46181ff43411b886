#include "pik/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pik/rng.hpp"

namespace pik {
namespace {

bool is_dynamic_scene_object(const BodySpec& b) {
    return b.dynamic && b.id != kActionBodyId;
}

// Earliest contact of the action object with a dynamic object, if any.
std::optional<std::int64_t> first_action_contact(const std::vector<SceneState>& states,
                                                 const std::vector<ContactEvent>& contacts) {
    if (states.empty()) return std::nullopt;
    const SceneState& s0 = states.front();
    if (body_index(s0, kActionBodyId) < 0) return std::nullopt;

    std::optional<std::int64_t> best;
    for (const ContactEvent& ev : contacts) {
        const std::string* other = nullptr;
        if (ev.body_a == kActionBodyId)
            other = &ev.body_b;
        else if (ev.body_b == kActionBodyId)
            other = &ev.body_a;
        if (!other) continue;
        const int idx = body_index(s0, *other);
        if (idx < 0 || !s0.bodies[static_cast<std::size_t>(idx)].dynamic) continue;
        if (!best || ev.t < *best) best = ev.t;
    }
    return best;
}

}  // namespace

std::int64_t EffectCache::key_of(const Action& action) const {
    const std::int64_t qx = std::llround(action.position.x / quantum_);
    const std::int64_t qy = std::llround(action.position.y / quantum_);
    std::int64_t sel;
    if (std::holds_alternative<int>(action.selector))
        sel = std::get<int>(action.selector);
    else
        sel = std::llround(std::get<double>(action.selector) / quantum_);
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(sel));
    h = mix_seed(h, static_cast<std::uint64_t>(qx));
    h = mix_seed(h, static_cast<std::uint64_t>(qy));
    return static_cast<std::int64_t>(h);
}

std::optional<CausalEffect> EffectCache::find(const Action& action) const {
    const std::int64_t key = key_of(action);
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void EffectCache::insert(const Action& action, const CausalEffect& effect) {
    const std::int64_t key = key_of(action);
    std::lock_guard<std::mutex> lock(mutex_);
    entries_.emplace(key, effect);  // first write wins; all writers agree
}

std::size_t EffectCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

std::vector<SceneState> predict(const PuzzleSpec& puzzle, const Action& action,
                                const PredictorConfig& cfg) {
    if (!placement_valid(puzzle, action)) {
        // Counterfactual stand-in: the untouched scene, frozen.
        std::vector<SceneState> states(static_cast<std::size_t>(cfg.n_pred), puzzle.scene);
        for (int i = 0; i < cfg.n_pred; ++i) states[static_cast<std::size_t>(i)].t = i;
        return states;
    }
    const SceneState placed = place_action_object(puzzle, action);
    SimResult sim = simulate(placed, cfg.n_pred, kDt, puzzle.gravity, cfg.noise);
    return std::move(sim.states);
}

std::int64_t first_event(const std::vector<SceneState>& states,
                         const std::vector<ContactEvent>& contacts) {
    return first_action_contact(states, contacts).value_or(0);
}

CausalEffect extract_effect(const PuzzleSpec& puzzle, const std::vector<SceneState>& states,
                            const std::vector<ContactEvent>& contacts, const PredictorConfig& cfg) {
    if (states.empty()) return no_action_effect(puzzle);

    CausalEffect effect;
    const std::optional<std::int64_t> event = first_action_contact(states, contacts);
    effect.had_interaction = event.has_value();
    effect.t_event = event.value_or(0);

    const std::int64_t horizon = static_cast<std::int64_t>(states.size());
    const std::int64_t start = std::clamp<std::int64_t>(effect.t_event, 0, horizon - 1);
    const std::int64_t end = std::min<std::int64_t>(start + cfg.delta_t, horizon - 1);
    const double window = static_cast<double>(end - start);

    const SceneState& s_start = states[static_cast<std::size_t>(start)];
    const SceneState& s_end = states[static_cast<std::size_t>(end)];
    for (const BodySpec& b : puzzle.scene.bodies) {
        if (!is_dynamic_scene_object(b)) continue;
        Vec2 rate{0.0, 0.0};
        if (window > 0.0) {
            const int i0 = body_index(s_start, b.id);
            const int i1 = body_index(s_end, b.id);
            if (i0 >= 0 && i1 >= 0) {
                rate = (s_end.bodies[static_cast<std::size_t>(i1)].position -
                        s_start.bodies[static_cast<std::size_t>(i0)].position) /
                       window;
                if (rate.norm() <= cfg.zero_effect_tol) rate = {0.0, 0.0};
            }
        }
        effect.per_object[b.id] = rate;
    }
    return effect;
}

CausalEffect causal_effect(const PuzzleSpec& puzzle, const Action& action,
                           const PredictorConfig& cfg, EffectCache* cache) {
    if (cache) {
        if (auto hit = cache->find(action)) return *hit;
    }
    CausalEffect effect;
    if (!placement_valid(puzzle, action)) {
        effect = no_action_effect(puzzle);
    } else {
        const SceneState placed = place_action_object(puzzle, action);
        SimResult sim = simulate(placed, cfg.n_pred, kDt, puzzle.gravity, cfg.noise);
        effect = extract_effect(puzzle, sim.states, sim.contacts, cfg);
    }
    if (cache) cache->insert(action, effect);
    return effect;
}

CausalEffect no_action_effect(const PuzzleSpec& puzzle) {
    CausalEffect effect;
    effect.t_event = 0;
    effect.had_interaction = false;
    for (const BodySpec& b : puzzle.scene.bodies)
        if (is_dynamic_scene_object(b)) effect.per_object[b.id] = Vec2{0.0, 0.0};
    return effect;
}

}  // namespace pik
