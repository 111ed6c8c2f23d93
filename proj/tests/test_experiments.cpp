#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "kinverify/experiments.hpp"
#include "kinverify/quadrature.hpp"

using namespace kinv;

TEST_CASE("exponent bookkeeping") {
    CHECK(derived_q(2.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(derived_q(3.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(derived_q(6.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(sigma_exponent() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("balance closed forms") {
    SUBCASE("no S1 term") {
        const BalanceResult r = balance_lambda({0.0, 2.0, 3.0, 0.0});
        CHECK(r.branch == "lambda0");
        CHECK(r.lambda == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(r.bound ==
              doctest::Approx(2.0 * std::pow(2.0, 2.0 / 3.0) * std::cbrt(3.0))
                  .epsilon(1e-12));
    }
    SUBCASE("no S0 term") {
        const BalanceResult r = balance_lambda({0.0, 2.0, 0.0, 5.0});
        CHECK(r.branch == "lambda1");
        CHECK(r.lambda == doctest::Approx(std::pow(2.0 / 5.0, 1.5)).epsilon(1e-12));
        CHECK(r.bound == doctest::Approx(2.0 * std::sqrt(10.0)).epsilon(1e-12));
    }
    SUBCASE("equal weights tie on lambda0") {
        const BalanceResult r = balance_lambda({0.0, 1.0, 1.0, 1.0});
        CHECK(r.branch == "lambda0");
        CHECK(r.lambda == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.bound == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("degenerate inputs") {
        CHECK(balance_lambda({0.0, 0.0, 1.0, 1.0}).branch == "degenerate_b");
        CHECK(balance_lambda({0.0, 0.0, 1.0, 1.0}).bound == 0.0);
        CHECK(balance_lambda({0.0, 1.0, 0.0, 0.0}).branch == "degenerate_cd");
        CHECK(balance_lambda({0.0, 1.0, 0.0, 0.0}).bound == 0.0);
    }
}

TEST_CASE("balance is near-optimal against a brute-force scan") {
    auto rng = make_rng(977);
    std::uniform_real_distribution<double> e(-2.0, 2.0);
    for (int i = 0; i < 30; ++i) {
        CorollaryInputs in;
        in.B = std::pow(10.0, e(rng));
        in.C = std::pow(10.0, e(rng));
        in.D = std::pow(10.0, e(rng));
        const BalanceResult r = balance_lambda(in);
        double best = r.bound;
        for (int k = 0; k <= 400; ++k) {
            const double lam = std::pow(10.0, -4.0 + 8.0 * k / 400.0);
            const double obj = std::pow(lam, -1.0 / 3.0) * in.B +
                               std::pow(lam, 2.0 / 3.0) * in.C +
                               std::pow(lam, 1.0 / 3.0) * in.D;
            best = std::min(best, obj);
        }
        CHECK(r.bound >= best * (1.0 - 1e-12));
        CHECK(r.bound <= best * 3.0);
    }
}

TEST_CASE("config defaults") {
    const ExperimentConfig cfg;
    CHECK(cfg.grid_n == 48);
    CHECK(cfg.p == 2.0);
    CHECK(cfg.tau_list.size() == 1);
    CHECK(cfg.lambda_list.size() == 5);
    CHECK(cfg.family == SplitVariant::S0Zero);
    CHECK(!cfg.quick);
}

TEST_CASE("scaling experiment needs at least three lambdas for a fit") {
    ExperimentConfig cfg;
    cfg.lambda_list = {1.0, 2.0};
    CHECK_THROWS_AS(run_scaling_experiment(cfg), std::invalid_argument);
}

TEST_CASE("quick suites pass end to end") {
    CHECK(verify_group_suite(true).all_pass());
    CHECK(verify_trajectory_suite(true).all_pass());
    CHECK(run_lp_suite(true).all_pass());
    CHECK(run_balance_suite(30).all_pass());
}
