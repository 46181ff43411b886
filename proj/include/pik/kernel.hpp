#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pik/dynamics_types.hpp"
#include "pik/vec2.hpp"

namespace pik {

/// Diagnostic decomposition of one causal-similarity evaluation.
struct SimilarityBreakdown {
    struct PerObject {
        double cos = 0.0;      // [-1,1]
        double mag = 0.0;      // (0,1]
        double obj_sim = 0.0;  // [0,1] = max(0, cos*mag)
    };
    std::map<std::string, PerObject> per_object;
    double mean_obj_sim = 0.0;
    double causal_sim = 0.0;  // mean * exp(mean - 1)
};

/// What PSD repair did to a Gram matrix.
struct GramRepairReport {
    double jitter_added = 0.0;
    int eigenvalues_clipped = 0;
    double min_eigenvalue_before = 0.0;
};

/// Cosine of the angle between two effect vectors. Conventions at zero:
/// both zero -> 1, exactly one zero -> 0.
double cos_sim(Vec2 u, Vec2 v);

/// 1 / (1 + | |u| - |v| |).
double mag_sim(Vec2 u, Vec2 v);

/// max(0, cos_sim * mag_sim), zero-vector conventions inherited.
double obj_sim(Vec2 effect_a, Vec2 effect_b);

/// Causal similarity of two actions from their per-object effects:
/// m * exp(m - 1) with m the mean per-object similarity. The effects must
/// cover the same object set (throws std::invalid_argument otherwise).
double causal_sim(const CausalEffect& a, const CausalEffect& b);
double causal_sim(const CausalEffect& a, const CausalEffect& b, SimilarityBreakdown& breakdown);

/// Pairwise causal-similarity matrix, exactly symmetric, repaired to be
/// positive semidefinite: adaptive diagonal jitter (1e-6 doubling up to 1e-2),
/// then eigenvalue clipping at zero if jitter cannot cover the deficit.
Eigen::MatrixXd gram(const std::vector<CausalEffect>& effects, GramRepairReport& report);

/// Repairs an arbitrary symmetric matrix in place; exposed for direct testing.
GramRepairReport repair_psd(Eigen::MatrixXd& k);

}  // namespace pik
