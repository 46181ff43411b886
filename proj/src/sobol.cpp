#include "pik/sobol.hpp"

#include <algorithm>
#include <cmath>

namespace pik {
namespace {

constexpr int kBits = 32;

// Direction numbers for the first three Sobol dimensions
// (primitive polynomials x, x+1, x^2+x+1 with standard initialization).
struct Directions {
    std::array<std::array<std::uint32_t, kBits>, 3> v{};

    constexpr Directions() {
        // Dimension 0: van der Corput in base 2.
        for (int k = 0; k < kBits; ++k) v[0][k] = 1u << (kBits - 1 - k);

        // Dimension 1: degree 1, m = {1}.
        {
            std::array<std::uint32_t, kBits> m{};
            m[0] = 1;
            for (int k = 1; k < kBits; ++k) m[k] = m[k - 1] ^ (m[k - 1] << 1);
            for (int k = 0; k < kBits; ++k) v[1][k] = m[k] << (kBits - 1 - k);
        }

        // Dimension 2: degree 2, a = 1, m = {1, 3}.
        {
            std::array<std::uint32_t, kBits> m{};
            m[0] = 1;
            m[1] = 3;
            for (int k = 2; k < kBits; ++k)
                m[k] = m[k - 2] ^ (m[k - 2] << 2) ^ (m[k - 1] << 1);
            for (int k = 0; k < kBits; ++k) v[2][k] = m[k] << (kBits - 1 - k);
        }
    }
};

constexpr Directions kDirections{};

}  // namespace

std::array<double, 3> Sobol3::point(std::uint64_t index) {
    // Gray-code construction: XOR the direction numbers of the set bits.
    const std::uint64_t gray = index ^ (index >> 1);
    std::array<std::uint32_t, 3> x{0, 0, 0};
    for (int bit = 0; bit < kBits; ++bit) {
        if ((gray >> bit) & 1u)
            for (int d = 0; d < 3; ++d) x[d] ^= kDirections.v[d][bit];
    }
    constexpr double scale = 1.0 / 4294967296.0;  // 2^-32
    return {x[0] * scale, x[1] * scale, x[2] * scale};
}

std::vector<Action> sobol_candidates(const ActionSpace& space, int n, int iteration) {
    std::vector<Action> actions;
    actions.reserve(static_cast<std::size_t>(n));
    const std::uint64_t base =
        static_cast<std::uint64_t>(iteration) * static_cast<std::uint64_t>(n) + 1;  // skip 0
    const int count = space.selector_count();
    for (int i = 0; i < n; ++i) {
        const auto u = Sobol3::point(base + static_cast<std::uint64_t>(i));
        Action a;
        a.position.x = space.x_range[0] + u[0] * (space.x_range[1] - space.x_range[0]);
        a.position.y = space.y_range[0] + u[1] * (space.y_range[1] - space.y_range[0]);
        const int sel = std::min(count - 1, static_cast<int>(u[2] * count));
        if (space.is_tool_set())
            a.selector = sel;
        else
            a.selector = space.radius_at(sel);
        actions.push_back(a);
    }
    return actions;
}

}  // namespace pik
