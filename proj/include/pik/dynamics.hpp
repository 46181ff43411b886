#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pik/dynamics_types.hpp"
#include "pik/puzzle.hpp"

namespace pik {

/// Memoizes causal effects keyed by the quantized action. One cache per
/// (puzzle, predictor config); safe under concurrent lookup/insert.
class EffectCache {
  public:
    explicit EffectCache(double quantum = 1.0) : quantum_(quantum) {}

    std::optional<CausalEffect> find(const Action& action) const;
    void insert(const Action& action, const CausalEffect& effect);
    std::size_t size() const;

  private:
    std::int64_t key_of(const Action& action) const;

    double quantum_;
    mutable std::mutex mutex_;
    std::unordered_map<std::int64_t, CausalEffect> entries_;
};

/// Short-horizon prediction: the first n_pred states of the placed scene
/// (optionally noisy). Invalid placements yield n_pred frozen copies of the
/// initial scene without the action object (the counterfactual stand-in).
std::vector<SceneState> predict(const PuzzleSpec& puzzle, const Action& action,
                                const PredictorConfig& cfg);

/// Earliest timestep at which the action object touches any dynamic object;
/// 0 when no such contact occurs within the horizon.
std::int64_t first_event(const std::vector<SceneState>& states,
                         const std::vector<ContactEvent>& contacts);

/// Extraction of per-object state-change rates from predicted states:
/// (pos[t_event + dt] - pos[t_event]) / dt with the window clamped to the
/// horizon. Rates at or below cfg.zero_effect_tol snap to exact zero.
CausalEffect extract_effect(const PuzzleSpec& puzzle, const std::vector<SceneState>& states,
                            const std::vector<ContactEvent>& contacts, const PredictorConfig& cfg);

/// predict + extract_effect with optional memoization.
CausalEffect causal_effect(const PuzzleSpec& puzzle, const Action& action,
                           const PredictorConfig& cfg, EffectCache* cache = nullptr);

/// Effect of placing nothing: zero rates for every dynamic object.
CausalEffect no_action_effect(const PuzzleSpec& puzzle);

}  // namespace pik
