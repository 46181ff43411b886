#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "pik/physics.hpp"
#include "pik/vec2.hpp"

namespace pik {

/// Configuration of the short-horizon causal-effect predictor.
struct PredictorConfig {
    int n_pred = 20;      // prediction horizon, timesteps
    int delta_t = 5;      // effect window length, timesteps
    std::optional<SimNoise> noise;  // empty = perfect short-horizon predictor
    double cache_quantum = 1.0;     // action quantization for memoization
    // Effect rates with magnitude at or below this are snapped to exact zero;
    // separates resting-contact jitter from real effects.
    double zero_effect_tol = 1e-2;
};

/// Per-object state-change rates induced by one action over the window
/// starting at the first causal event.
struct CausalEffect {
    std::map<std::string, Vec2> per_object;  // dynamic objects, excluding the action object
    std::int64_t t_event = 0;                // 0 when no interaction occurred
    bool had_interaction = false;
};

}  // namespace pik
