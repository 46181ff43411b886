#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pik/gp.hpp"
#include "test_helpers.hpp"

using namespace pik;
using namespace pik::test;

namespace {

ActionSpace unit_space() {
    ActionSpace space;
    BallRadiusSpace ball;
    ball.min_radius = 2.0;
    ball.max_radius = 32.0;
    ball.step = (32.0 - 2.0) / 38.0;  // 39 radius values
    space.family = ball;
    space.x_range = {0.0, 256.0};
    space.y_range = {0.0, 256.0};
    return space;
}

Action grid_action(double x, double y, int radius_index = 0) {
    const ActionSpace space = unit_space();
    return Action{space.radius_at(radius_index), {x, y}};
}

CausalEffect one_object_effect(Vec2 v) {
    CausalEffect e;
    e.per_object["obj"] = v;
    e.had_interaction = v != Vec2{0.0, 0.0};
    return e;
}

CausalEffect random_effect(int objects, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    CausalEffect e;
    for (int i = 0; i < objects; ++i)
        e.per_object["obj" + std::to_string(i)] = Vec2{u(rng), u(rng)};
    return e;
}

}  // namespace

TEST_CASE("fit: one noise-free point interpolates exactly") {
    GPHyperparams hyper;
    hyper.noise_variance = 0.0;
    const std::vector<Action> actions = {grid_action(10.0, 20.0)};
    const std::vector<CausalEffect> effects = {one_object_effect({1.0, 0.0})};
    const GPModel model = fit(KernelMode::kCausal, unit_space(), actions, effects, {0.7}, hyper);
    const Posterior p = posterior(model, effects[0]);
    CHECK(p.mean == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(p.variance == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fit: all-zero scores give the zero posterior mean everywhere") {
    std::mt19937_64 rng(3);
    std::vector<Action> actions;
    std::vector<CausalEffect> effects;
    std::vector<double> scores;
    for (int i = 0; i < 6; ++i) {
        actions.push_back(grid_action(10.0 * i + 5.0, 50.0));
        effects.push_back(random_effect(2, rng));
        scores.push_back(0.0);
    }
    const GPModel model = fit(KernelMode::kCausal, unit_space(), actions, effects, scores, {});
    for (int i = 0; i < 10; ++i) {
        const Posterior p = posterior(model, random_effect(2, rng));
        CHECK(p.mean == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("fit: refitting identical inputs reproduces the model exactly") {
    std::mt19937_64 rng(5);
    std::vector<Action> actions;
    std::vector<CausalEffect> effects;
    std::vector<double> scores;
    for (int i = 0; i < 5; ++i) {
        actions.push_back(grid_action(20.0 * i + 10.0, 80.0));
        effects.push_back(random_effect(3, rng));
        scores.push_back(0.1 * i);
    }
    const GPModel m1 = fit(KernelMode::kCausal, unit_space(), actions, effects, scores, {});
    const GPModel m2 = fit(KernelMode::kCausal, unit_space(), actions, effects, scores, {});
    CHECK(m1.gram == m2.gram);
    CHECK(m1.alpha == m2.alpha);
    CHECK(m1.chol_lower == m2.chol_lower);
}

TEST_CASE("posterior: factorization reproduces the regularized gram") {
    std::mt19937_64 rng(6);
    std::vector<Action> actions;
    std::vector<CausalEffect> effects;
    std::vector<double> scores;
    for (int i = 0; i < 6; ++i) {
        actions.push_back(grid_action(15.0 * i + 5.0, 40.0));
        effects.push_back(random_effect(2, rng));
        scores.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    }
    GPHyperparams hyper;
    const GPModel model = fit(KernelMode::kCausal, unit_space(), actions, effects, scores, hyper);
    const Eigen::MatrixXd reconstructed = model.chol_lower * model.chol_lower.transpose();
    const Eigen::MatrixXd expected =
        hyper.signal_variance * model.gram +
        hyper.noise_variance * Eigen::MatrixXd::Identity(model.gram.rows(), model.gram.cols());
    CHECK((reconstructed - expected).norm() <= 1e-8 * expected.norm());
}

TEST_CASE("posterior: zero-similarity query recovers the prior") {
    GPHyperparams hyper;
    hyper.signal_variance = 1.0;
    const std::vector<Action> actions = {grid_action(10.0, 20.0), grid_action(30.0, 20.0)};
    const std::vector<CausalEffect> effects = {one_object_effect({1.0, 0.0}),
                                               one_object_effect({2.0, 0.0})};
    const GPModel model =
        fit(KernelMode::kCausal, unit_space(), actions, effects, {0.4, 0.9}, hyper);
    // Opposite direction: obj_sim 0 against both training effects.
    const Posterior p = posterior(model, one_object_effect({-1.0, 0.0}));
    CHECK(p.mean == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.variance == doctest::Approx(hyper.signal_variance).epsilon(1e-12));
}

TEST_CASE("posterior: matches an independent dense direct solve") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uy(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const int d = 1 + static_cast<int>(rng() % 3);
        std::vector<Action> actions;
        std::vector<CausalEffect> effects;
        std::vector<double> scores;
        for (int i = 0; i < n; ++i) {
            actions.push_back(grid_action(5.0 * i + 5.0, 100.0));
            effects.push_back(random_effect(d, rng));
            scores.push_back(uy(rng));
        }
        GPHyperparams hyper;
        const GPModel model =
            fit(KernelMode::kCausal, unit_space(), actions, effects, scores, hyper);

        const CausalEffect query = random_effect(d, rng);
        const Posterior p = posterior(model, query);

        // Direct route: explicit inverse instead of the Cholesky solve.
        const Eigen::Index ni = model.gram.rows();
        const Eigen::MatrixXd a_mat = hyper.signal_variance * model.gram +
                                      hyper.noise_variance * Eigen::MatrixXd::Identity(ni, ni);
        Eigen::VectorXd k_star(ni);
        for (Eigen::Index i = 0; i < ni; ++i)
            k_star[i] = hyper.signal_variance *
                        causal_sim(query, model.train_effects[static_cast<std::size_t>(i)]);
        const Eigen::MatrixXd a_inv = a_mat.fullPivLu().inverse();
        const double mean = k_star.dot(a_inv * model.y);
        const double variance = hyper.signal_variance - k_star.dot(a_inv * k_star);
        CHECK(p.mean == doctest::Approx(mean).epsilon(1e-9));
        CHECK(p.variance == doctest::Approx(std::max(variance, 0.0)).epsilon(1e-9));
    }
}

TEST_CASE("posterior: variance never increases when a training point is added") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uy(0.0, 1.0);
    std::uniform_real_distribution<double> ux(0.0, 256.0);
    const ActionSpace space = unit_space();

    for (int trial = 0; trial < 5; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 4);
        std::vector<Action> actions;
        std::vector<double> scores;
        for (int i = 0; i < n + 1; ++i) {
            actions.push_back(grid_action(ux(rng), ux(rng), static_cast<int>(rng() % 39)));
            scores.push_back(uy(rng));
        }
        const std::vector<Action> base(actions.begin(), actions.end() - 1);
        const std::vector<double> base_scores(scores.begin(), scores.end() - 1);

        // RBF mode: a valid PSD kernel, so the Schur argument holds exactly.
        const GPModel small = fit(KernelMode::kRbf, space, base, {}, base_scores, {});
        const GPModel large = fit(KernelMode::kRbf, space, actions, {}, scores, {});
        for (int q = 0; q < 50; ++q) {
            const Action query = grid_action(ux(rng), ux(rng), static_cast<int>(rng() % 39));
            const Posterior ps = posterior(small, query);
            const Posterior pl = posterior(large, query);
            CHECK(pl.variance <= ps.variance + 1e-9);
        }
    }
}

TEST_CASE("posterior: invariant to permutation of the training set") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> uy(0.0, 1.0);
    std::vector<Action> actions;
    std::vector<CausalEffect> effects;
    std::vector<double> scores;
    for (int i = 0; i < 7; ++i) {
        actions.push_back(grid_action(30.0 * i + 5.0, 60.0));
        effects.push_back(random_effect(2, rng));
        scores.push_back(uy(rng));
    }
    const GPModel m1 = fit(KernelMode::kCausal, unit_space(), actions, effects, scores, {});

    std::vector<std::size_t> perm(actions.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Action> pa;
    std::vector<CausalEffect> pe;
    std::vector<double> py;
    for (const std::size_t i : perm) {
        pa.push_back(actions[i]);
        pe.push_back(effects[i]);
        py.push_back(scores[i]);
    }
    const GPModel m2 = fit(KernelMode::kCausal, unit_space(), pa, pe, py, {});

    for (int q = 0; q < 20; ++q) {
        const CausalEffect query = random_effect(2, rng);
        const Posterior p1 = posterior(m1, query);
        const Posterior p2 = posterior(m2, query);
        CHECK(p1.mean == doctest::Approx(p2.mean).epsilon(1e-9));
        CHECK(p1.variance == doctest::Approx(p2.variance).epsilon(1e-9));
    }
}

TEST_CASE("posterior: queries with identical similarity profiles coincide") {
    const std::vector<Action> actions = {grid_action(10.0, 10.0)};
    const std::vector<CausalEffect> effects = {one_object_effect({1.0, 0.0})};
    const GPModel model = fit(KernelMode::kCausal, unit_space(), actions, effects, {0.8}, {});

    // Orthogonal effects in either direction: similarity 0 to the single
    // training effect.
    const Posterior p1 = posterior(model, one_object_effect({0.0, 1.0}));
    const Posterior p2 = posterior(model, one_object_effect({0.0, -1.0}));
    CHECK(p1.mean == doctest::Approx(p2.mean).epsilon(1e-12));
    CHECK(p1.variance == doctest::Approx(p2.variance).epsilon(1e-12));

    // Equal-magnitude rotations with the same cosine: similarity 0.5 each.
    const Posterior p3 = posterior(model, one_object_effect({0.5, std::sqrt(0.75)}));
    const Posterior p4 = posterior(model, one_object_effect({0.5, -std::sqrt(0.75)}));
    CHECK(p3.mean == doctest::Approx(p4.mean).epsilon(1e-9));
    CHECK(p3.variance == doctest::Approx(p4.variance).epsilon(1e-9));
}

TEST_CASE("rbf_kernel: closed-form hand values on normalized coordinates") {
    GPHyperparams hyper;  // lengthscales 0.2, output scale 1
    const Eigen::Vector3d a(0.0, 0.0, 0.0);
    const Eigen::Vector3d b(0.2, 0.0, 0.0);
    CHECK(rbf_kernel(a, a, hyper) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rbf_kernel(a, b, hyper) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    const Eigen::Vector3d c(0.2, 0.2, 0.0);
    CHECK(rbf_kernel(a, c, hyper) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    hyper.rbf_output_scale = 2.5;
    CHECK(rbf_kernel(a, b, hyper) == doctest::Approx(2.5 * std::exp(-0.5)).epsilon(1e-12));

    hyper.rbf_output_scale = 1.0;
    hyper.rbf_lengthscales = {0.1, 0.2, 0.4};
    const Eigen::Vector3d d(0.1, 0.2, 0.4);
    CHECK(rbf_kernel(a, d, hyper) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
}

TEST_CASE("ucb: arithmetic") {
    CHECK(ucb(0.5, 0.04, 2.0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(ucb(0.3, 0.25, 0.0) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(ucb(0.7, 0.0, 5.0) == doctest::Approx(0.7).epsilon(1e-12));
}
