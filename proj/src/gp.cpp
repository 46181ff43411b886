#include "pik/gp.hpp"

#include <cmath>
#include <stdexcept>

namespace pik {
namespace {

// Posterior from a precomputed k_* vector (already scaled by sigma_f^2).
Posterior posterior_from_kstar(const GPModel& model, const Eigen::VectorXd& k_star,
                               double k_self_scaled) {
    Posterior p;
    p.mean = k_star.dot(model.alpha);
    const Eigen::VectorXd v = model.chol_lower.triangularView<Eigen::Lower>().solve(k_star);
    p.variance = std::max(k_self_scaled - v.squaredNorm(), 0.0);
    return p;
}

}  // namespace

Eigen::Vector3d normalize_action(const ActionSpace& space, const Action& action) {
    Eigen::Vector3d out;
    out[0] = (action.position.x - space.x_range[0]) / (space.x_range[1] - space.x_range[0]);
    out[1] = (action.position.y - space.y_range[0]) / (space.y_range[1] - space.y_range[0]);
    if (space.is_tool_set()) {
        const int count = space.selector_count();
        out[2] = count > 1 ? static_cast<double>(action.tool_index()) / (count - 1) : 0.0;
    } else {
        const auto& ball = std::get<BallRadiusSpace>(space.family);
        const double span = ball.max_radius - ball.min_radius;
        out[2] = span > 0.0 ? (action.ball_radius() - ball.min_radius) / span : 0.0;
    }
    return out;
}

double rbf_kernel(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const GPHyperparams& hyper) {
    double q = 0.0;
    for (int d = 0; d < 3; ++d) {
        const double diff = (a[d] - b[d]) / hyper.rbf_lengthscales[d];
        q += diff * diff;
    }
    return hyper.rbf_output_scale * std::exp(-0.5 * q);
}

GPModel fit(KernelMode mode, const ActionSpace& space, const std::vector<Action>& actions,
            const std::vector<CausalEffect>& effects, const std::vector<double>& scores,
            const GPHyperparams& hyper) {
    const std::size_t n = actions.size();
    if (n == 0) throw std::invalid_argument("gp::fit: at least one observation required");
    if (scores.size() != n) throw std::invalid_argument("gp::fit: |actions| != |scores|");
    if (mode == KernelMode::kCausal && effects.size() != n)
        throw std::invalid_argument("gp::fit: causal mode needs one effect per action");
    for (double s : scores)
        if (!std::isfinite(s)) throw std::invalid_argument("gp::fit: non-finite score");

    GPModel model;
    model.mode = mode;
    model.space = space;
    model.train_actions = actions;
    model.hyper = hyper;
    model.y = Eigen::Map<const Eigen::VectorXd>(scores.data(), static_cast<Eigen::Index>(n));

    const Eigen::Index ni = static_cast<Eigen::Index>(n);
    if (mode == KernelMode::kCausal) {
        model.train_effects = effects;
        model.gram = gram(effects, model.repair);
    } else {
        model.train_coords.reserve(n);
        for (const Action& a : actions) model.train_coords.push_back(normalize_action(space, a));
        model.gram.resize(ni, ni);
        for (Eigen::Index i = 0; i < ni; ++i)
            for (Eigen::Index j = 0; j < ni; ++j)
                model.gram(i, j) = rbf_kernel(model.train_coords[i], model.train_coords[j], hyper);
    }

    Eigen::MatrixXd a_mat = hyper.signal_variance * model.gram +
                            hyper.noise_variance * Eigen::MatrixXd::Identity(ni, ni);
    double extra = 0.0;
    for (int attempt = 0; attempt < 16; ++attempt) {
        Eigen::LLT<Eigen::MatrixXd> llt(a_mat);
        if (llt.info() == Eigen::Success) {
            model.chol_lower = llt.matrixL();
            model.alpha = llt.solve(model.y);
            return model;
        }
        extra = extra == 0.0 ? 1e-10 : extra * 10.0;
        if (extra > 1e-1) break;
        a_mat += extra * Eigen::MatrixXd::Identity(ni, ni);
    }
    throw std::runtime_error("gp::fit: Cholesky factorization failed after maximal jitter");
}

Posterior posterior(const GPModel& model, const CausalEffect& query_effect) {
    if (model.mode != KernelMode::kCausal)
        throw std::invalid_argument("gp::posterior: effect query on a non-causal model");
    const Eigen::Index n = model.y.size();
    Eigen::VectorXd k_star(n);
    for (Eigen::Index i = 0; i < n; ++i)
        k_star[i] = model.hyper.signal_variance *
                    causal_sim(query_effect, model.train_effects[static_cast<std::size_t>(i)]);
    return posterior_from_kstar(model, k_star, model.hyper.signal_variance);
}

Posterior posterior(const GPModel& model, const Action& query_action) {
    if (model.mode != KernelMode::kRbf)
        throw std::invalid_argument("gp::posterior: action query on a non-rbf model");
    const Eigen::Index n = model.y.size();
    const Eigen::Vector3d q = normalize_action(model.space, query_action);
    Eigen::VectorXd k_star(n);
    for (Eigen::Index i = 0; i < n; ++i)
        k_star[i] = model.hyper.signal_variance *
                    rbf_kernel(q, model.train_coords[static_cast<std::size_t>(i)], model.hyper);
    return posterior_from_kstar(model, k_star,
                                model.hyper.signal_variance * model.hyper.rbf_output_scale);
}

double ucb(double mean, double variance, double kappa) {
    return mean + kappa * std::sqrt(std::max(variance, 0.0));
}

}  // namespace pik
