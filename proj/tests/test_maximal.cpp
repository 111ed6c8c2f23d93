#include <cmath>
#include <vector>

#include "doctest.h"
#include "kinverify/field.hpp"
#include "kinverify/maximal.hpp"
#include "kinverify/phase.hpp"

using namespace kinv;

TEST_CASE("default radius grid is increasing and spans 2^-4 .. 2^4") {
    const MaximalConfig cfg = default_maximal_config();
    REQUIRE(!cfg.r_grid.empty());
    CHECK(cfg.r_grid.front() == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(cfg.r_grid.back() == doctest::Approx(16.0).epsilon(1e-12));
    for (std::size_t i = 1; i < cfg.r_grid.size(); ++i)
        CHECK(cfg.r_grid[i] > cfg.r_grid[i - 1]);
}

TEST_CASE("maximal functions of a constant recover the constant") {
    const AnalyticField c = constant_field(2.5);
    const MaximalConfig cfg = default_maximal_config();
    const PhasePoint z{0.3, -0.6, 0.9};
    CHECK(maximal_x(c, z, cfg) == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(maximal_kin(c, z, cfg) == doctest::Approx(2.5).epsilon(1e-10));
    // the scale-weighted variant picks up the largest radius of the grid
    CHECK(maximal_kin1(c, z, cfg) ==
          doctest::Approx(2.5 * cfg.r_grid.back()).epsilon(1e-10));
}

TEST_CASE("maximal function dominates the point value of a smooth field") {
    const AnalyticField f = gaussian_field();
    const MaximalConfig cfg = default_maximal_config();
    for (const PhasePoint& z :
         {PhasePoint{0.0, 0.0, 0.0}, PhasePoint{0.5, -0.5, 1.0}, PhasePoint{1.5, 2.0, -1.0}}) {
        const double m = maximal_kin(f, z, cfg);
        CHECK(m >= 0.95 * f.eval(z));  // smallest ball already averages nearby values
        CHECK(m <= 1.0);               // averages of f never exceed its sup
    }
}

TEST_CASE("kinetic maximal function is translation covariant on the group") {
    const AnalyticField f = gaussian_field();
    MaximalConfig cfg = default_maximal_config();
    // left translate the field: g(z) = f(w o z) and compare at translated points
    const PhasePoint w{0.4, -0.2, 0.7};
    AnalyticField g;
    auto ev = f.eval;
    g.eval = [ev, w](const PhasePoint& z) { return ev(compose(w, z)); };
    const PhasePoint z{0.2, 0.3, -0.5};
    CHECK(maximal_kin(g, z, cfg) ==
          doctest::Approx(maximal_kin(f, compose(w, z), cfg)).epsilon(1e-9));
}

TEST_CASE("I_1 of a constant matches the layer-cake closed form") {
    // integral of rho^{-(Q-1)} over rho <= R is 48 R for the box quasi-norm;
    // the integrand has max() kinks, so the shell rule needs a few extra nodes
    const AnalyticField c = constant_field(1.0);
    MaximalConfig cfg = default_maximal_config();
    cfg.ball_nodes = 16;
    cfg.i1_truncation = 1.0;
    const double v = fractional_integral_I1(c, origin(), cfg);
    CHECK(v == doctest::Approx(48.0).epsilon(0.005));

    cfg.i1_truncation = 2.0;
    const double v2 = fractional_integral_I1(c, origin(), cfg);
    CHECK(v2 == doctest::Approx(96.0).epsilon(0.005));
}

TEST_CASE("I_1 grows with the truncation radius") {
    const AnalyticField f = gaussian_field();
    MaximalConfig cfg = default_maximal_config();
    cfg.i1_truncation = 0.5;
    const double a = fractional_integral_I1(f, origin(), cfg);
    cfg.i1_truncation = 1.0;
    const double b = fractional_integral_I1(f, origin(), cfg);
    CHECK(a > 0.0);
    CHECK(b > a);
}

TEST_CASE("domination summary on the Gaussian probe") {
    const AnalyticField h = gaussian_field();
    std::vector<PhasePoint> samples;
    for (double t : {-1.0, 0.0, 1.0})
        for (double x : {-1.0, 0.0, 1.0})
            for (double v : {-1.0, 0.0, 1.0}) samples.push_back({t, x, v});
    MaximalConfig cfg = default_maximal_config();
    cfg.ball_nodes = 6;
    const DominationSummary s =
        domination_check(h, samples, {0.25, 1.0, 4.0}, cfg);
    REQUIRE(!s.empty_input);
    REQUIRE(!s.rows.empty());
    CHECK(s.c_plain > 0.0);
    CHECK(s.c_plain < 50.0);
    CHECK(s.c_grad > 0.0);
    CHECK(s.c_grad < 50.0);
    CHECK(s.grad_l1_slope == doctest::Approx(-3.0).epsilon(0.2));
    for (const DominationRow& row : s.rows) {
        CHECK(row.ratio_plain >= 0.0);
        CHECK(row.ratio_grad >= 0.0);
    }
}

TEST_CASE("domination flags empty input") {
    const DominationSummary s = domination_check(gaussian_field(), {}, {1.0},
                                                 default_maximal_config());
    CHECK(s.empty_input);
}
