#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pik/dynamics_types.hpp"
#include "pik/kernel.hpp"
#include "pik/puzzle.hpp"

namespace pik {

enum class KernelMode {
    kCausal,  // causal similarity over predicted effects
    kRbf,     // RBF over normalized action coordinates (ablation)
};

struct GPHyperparams {
    double signal_variance = 1.0;  // sigma_f^2
    double noise_variance = 1e-2;  // sigma_n^2
    double ucb_kappa = 2.0;
    // Ablation kernel only:
    std::array<double, 3> rbf_lengthscales{0.2, 0.2, 0.2};  // normalized coords
    double rbf_output_scale = 1.0;                          // sigma_k^2
};

/// Fitted Gaussian-process surrogate with zero prior mean. Immutable after
/// fit; posterior queries may run concurrently.
struct GPModel {
    KernelMode mode = KernelMode::kCausal;
    ActionSpace space;  // normalization bounds for rbf queries
    std::vector<Action> train_actions;
    std::vector<CausalEffect> train_effects;  // causal mode only
    std::vector<Eigen::Vector3d> train_coords;  // rbf mode: normalized actions
    Eigen::VectorXd y;
    Eigen::MatrixXd gram;       // raw kernel matrix (after PSD repair in causal mode)
    Eigen::MatrixXd chol_lower; // L with L L^T = sigma_f^2 * gram + sigma_n^2 * I
    Eigen::VectorXd alpha;      // (sigma_f^2 * gram + sigma_n^2 * I)^{-1} y
    GPHyperparams hyper;
    GramRepairReport repair;
};

struct Posterior {
    double mean = 0.0;
    double variance = 0.0;  // clamped at 0 from below
};

/// Action mapped to [0,1]^3: x, y, selector index (or normalized radius).
Eigen::Vector3d normalize_action(const ActionSpace& space, const Action& action);

/// sigma_k^2 * exp(-1/2 (a-b)^T diag(l)^-2 (a-b)) on normalized coordinates.
double rbf_kernel(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const GPHyperparams& hyper);

/// Fits the surrogate on scored actions. Causal mode requires one predicted
/// effect per action. Throws std::invalid_argument on size mismatches and
/// std::runtime_error if factorization fails after maximal jitter.
GPModel fit(KernelMode mode, const ActionSpace& space, const std::vector<Action>& actions,
            const std::vector<CausalEffect>& effects, const std::vector<double>& scores,
            const GPHyperparams& hyper);

/// Posterior at a query given its effect (causal mode) or action (rbf mode).
Posterior posterior(const GPModel& model, const CausalEffect& query_effect);
Posterior posterior(const GPModel& model, const Action& query_action);

/// mean + kappa * sqrt(variance).
double ucb(double mean, double variance, double kappa);

}  // namespace pik
