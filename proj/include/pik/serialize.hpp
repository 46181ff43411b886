#pragma once

#include "pik/json_util.hpp"
#include "pik/puzzle.hpp"
#include "pik/solver.hpp"

namespace pik {

/// {"tool": i, "x": .., "y": ..} or {"radius": r, "x": .., "y": ..}.
jsonutil::ordered_json action_to_json(const Action& action);
Action action_from_json(const jsonutil::json& doc, const std::string& ctx);

std::string serialize_solve_result(const SolveResult& result, const std::string& agent,
                                   std::uint64_t seed);

}  // namespace pik
