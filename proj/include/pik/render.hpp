#pragma once

#include <string>

#include "pik/puzzle.hpp"

namespace pik {

struct RenderSummary {
    int frames_written = 0;
    bool success = false;
    double closest_distance = 0.0;
    double score = 0.0;
};

/// Executes the action and writes one SVG frame per `stride` timesteps
/// (frame at t = 0 included) plus a summary.json, into out_dir.
/// Throws InvalidPlacement for rejected actions.
RenderSummary render_rollout(const PuzzleSpec& puzzle, const Action& action,
                             const std::string& out_dir, int stride);

/// Single-scene SVG (used per frame and handy for debugging puzzles).
std::string scene_svg(const PuzzleSpec& puzzle, const SceneState& state);

}  // namespace pik
