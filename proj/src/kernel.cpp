#include "pik/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pik {
namespace {

constexpr double kJitterStart = 1e-6;
constexpr double kJitterMax = 1e-2;
constexpr double kPsdTolerance = 1e-8;

}  // namespace

double cos_sim(Vec2 u, Vec2 v) {
    if (u == v) return 1.0;  // exact self-similarity, including the zero/zero case
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    const double c = dot(u, v) / (nu * nv);
    return std::clamp(c, -1.0, 1.0);
}

double mag_sim(Vec2 u, Vec2 v) {
    return 1.0 / (1.0 + std::abs(u.norm() - v.norm()));
}

double obj_sim(Vec2 effect_a, Vec2 effect_b) {
    return std::max(0.0, cos_sim(effect_a, effect_b) * mag_sim(effect_a, effect_b));
}

double causal_sim(const CausalEffect& a, const CausalEffect& b) {
    SimilarityBreakdown breakdown;
    return causal_sim(a, b, breakdown);
}

double causal_sim(const CausalEffect& a, const CausalEffect& b, SimilarityBreakdown& breakdown) {
    if (a.per_object.size() != b.per_object.size())
        throw std::invalid_argument("causal_sim: effects cover different object sets");
    breakdown.per_object.clear();
    double sum = 0.0;
    auto it_b = b.per_object.begin();
    for (auto it_a = a.per_object.begin(); it_a != a.per_object.end(); ++it_a, ++it_b) {
        if (it_a->first != it_b->first)
            throw std::invalid_argument("causal_sim: effects cover different object sets");
        SimilarityBreakdown::PerObject entry;
        entry.cos = cos_sim(it_a->second, it_b->second);
        entry.mag = mag_sim(it_a->second, it_b->second);
        // Zero-vector conventions live in obj_sim, not in the cos*mag product.
        entry.obj_sim = obj_sim(it_a->second, it_b->second);
        breakdown.per_object.emplace(it_a->first, entry);
        sum += entry.obj_sim;
    }
    const double d = static_cast<double>(a.per_object.size());
    const double mean = d > 0.0 ? sum / d : 1.0;
    breakdown.mean_obj_sim = mean;
    breakdown.causal_sim = mean * std::exp(mean - 1.0);
    return breakdown.causal_sim;
}

GramRepairReport repair_psd(Eigen::MatrixXd& k) {
    GramRepairReport report;
    const Eigen::Index n = k.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
    const double min_eig = eig.eigenvalues().minCoeff();
    report.min_eigenvalue_before = min_eig;
    if (min_eig >= -kPsdTolerance) return report;

    // Diagonal jitter first: cheap and keeps off-diagonal structure intact.
    for (double jitter = kJitterStart; jitter <= kJitterMax; jitter *= 2.0) {
        if (min_eig + jitter >= -kPsdTolerance) {
            k += jitter * Eigen::MatrixXd::Identity(n, n);
            report.jitter_added = jitter;
            return report;
        }
    }

    // Deficit too large for jitter: clip negative eigenvalues at zero.
    Eigen::VectorXd values = eig.eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (values[i] < 0.0) {
            values[i] = 0.0;
            ++report.eigenvalues_clipped;
        }
    }
    k = eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
    k = ((k + k.transpose()) * 0.5).eval();  // exact symmetry after reconstruction
    return report;
}

Eigen::MatrixXd gram(const std::vector<CausalEffect>& effects, GramRepairReport& report) {
    const Eigen::Index n = static_cast<Eigen::Index>(effects.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = causal_sim(effects[i], effects[i]);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double s = causal_sim(effects[i], effects[j]);
            k(i, j) = s;  // computed once per pair: symmetric bitwise
            k(j, i) = s;
        }
    }
    report = repair_psd(k);
    return k;
}

}  // namespace pik
