#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pik/puzzle.hpp"

namespace pik {

/// 3-dimensional Sobol low-discrepancy sequence with random access by index.
/// Index 0 is the all-zeros point; callers usually start at 1.
class Sobol3 {
  public:
    static std::array<double, 3> point(std::uint64_t index);
};

/// n candidate actions from the Sobol sequence mapped onto the action space.
/// Successive iterations consume fresh subsequences so repeated proposals
/// explore new points. Deterministic; all returned actions are in-space.
std::vector<Action> sobol_candidates(const ActionSpace& space, int n, int iteration);

}  // namespace pik
