#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "kinverify/convolve.hpp"
#include "kinverify/defect.hpp"
#include "kinverify/field.hpp"
#include "kinverify/quadrature.hpp"

using namespace kinv;

namespace {
GridSpec cube(int n, double half) {
    GridSpec g;
    g.nt = g.nx = g.nv = n;
    g.T = g.X = g.V = half;
    return g;
}

// single-cell grid whose only lattice point is exactly z
GridSpec pin_grid(const PhasePoint& z) {
    GridSpec g;
    g.nt = g.nx = g.nv = 1;
    g.T = g.X = g.V = 0.125;
    g.ct = z.t + g.T;
    g.cx = z.x + g.X;
    g.cv = z.v + g.V;
    return g;
}
}  // namespace

TEST_CASE("both splittings satisfy the transport identity") {
    auto rng = make_rng(51);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (SplitVariant v : {SplitVariant::S0Zero, SplitVariant::S0Generic}) {
        const TransportSplit s = make_gaussian_split(v);
        for (int i = 0; i < 30; ++i)
            CHECK(split_residual(s, {u(rng), u(rng), u(rng)}) < 1e-12);
    }
}

TEST_CASE("separable forms agree with the analytic evaluators") {
    auto rng = make_rng(52);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (SplitVariant v : {SplitVariant::S0Zero, SplitVariant::S0Generic}) {
        const TransportSplit s = make_gaussian_split(v);
        const FieldPair* pairs[] = {&s.f, &s.S0, &s.S1, &s.div_v_S0, &s.vgrad_f};
        for (const FieldPair* p : pairs) {
            if (!p->has_fast() || p->zero) continue;
            for (int i = 0; i < 30; ++i) {
                const PhasePoint z{u(rng), u(rng), u(rng)};
                CHECK(sep_eval(p->separable, z) ==
                      doctest::Approx(p->analytic.eval(z)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("zero channels of the S0-free splitting are flagged") {
    const TransportSplit s = make_gaussian_split(SplitVariant::S0Zero);
    CHECK(s.S0.zero);
    CHECK(s.div_v_S0.zero);
    CHECK(!s.S1.zero);
    const TransportSplit g = make_gaussian_split(SplitVariant::S0Generic);
    CHECK(!g.S0.zero);
}

TEST_CASE("trajectory average of a constant is the constant") {
    CHECK(trajectory_average(constant_field(2.0), 1.0, {0.4, -0.7, 1.1}) ==
          doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("trajectory average equals the kernel convolution") {
    const AnalyticField f = gaussian_field();
    for (const PhasePoint& z :
         {PhasePoint{0.0, 0.0, 0.0}, PhasePoint{0.8, -0.5, 0.3}, PhasePoint{-1.2, 0.9, -0.7}}) {
        const double a = trajectory_average(f, 1.0, z);
        const double b = kinetic_convolve_at({KernelKind::Mollifier, 1.0}, f, z);
        CHECK(a == doctest::Approx(b).epsilon(1e-6));
    }
}

TEST_CASE("trajectory average rejects nonpositive tau") {
    CHECK_THROWS_AS(trajectory_average(gaussian_field(), 0.0, origin()),
                    std::invalid_argument);
}

TEST_CASE("r-schedule integrates constants exactly and stays inside (0, tau]") {
    const RSchedule s = make_r_schedule(1.0);
    CHECK(s.r.size() == 28);  // 8 dyadic panels x 2 + 3 uniform panels x 4
    double total = 0.0;
    for (std::size_t i = 0; i < s.r.size(); ++i) {
        CHECK(s.r[i] > 0.0);
        CHECK(s.r[i] <= 1.0);
        total += s.w[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    const RSchedule s2 = make_r_schedule(2.0, 10, 4, 6, 4);
    CHECK(s2.r.size() == 64);
    double total2 = 0.0;
    for (double w : s2.w) total2 += w;
    CHECK(total2 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fast separable mollify equals the pointwise path") {
    const TransportSplit s = make_gaussian_split(SplitVariant::S0Zero);
    const GridSpec g = cube(3, 1.5);
    EngineOptions opt;
    opt.outer_nodes = 20;
    opt.inner_nodes = 20;
    const GridField fast = mollify(s.f.analytic, 1.0, g, opt, s.f.separable);
    const GridField slow = mollify(s.f.analytic, 1.0, g, opt);
    for (std::size_t i = 0; i < fast.samples.size(); ++i)
        CHECK(fast.samples[i] ==
              doctest::Approx(slow.samples[i]).epsilon(1e-11));
}

TEST_CASE("mollify agrees with the direct kernel quadrature") {
    const TransportSplit s = make_gaussian_split(SplitVariant::S0Zero);
    const GridSpec g = cube(4, 2.0);
    const GridField a = mollify(s.f.analytic, 1.0, g, EngineOptions{}, s.f.separable);
    const GridField b = kinetic_convolve({KernelKind::Mollifier, 1.0}, s.f.analytic, g);
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        CHECK(a.samples[i] == doctest::Approx(b.samples[i]).epsilon(1e-6));
}

TEST_CASE("representation at a point: engine and chart convolution coincide") {
    // identical node counts on both paths make the comparison nodewise exact;
    // this pins signs and channel weights independently of quadrature error
    for (SplitVariant v : {SplitVariant::S0Zero, SplitVariant::S0Generic}) {
        const TransportSplit s = make_gaussian_split(v);
        for (const PhasePoint& z : {PhasePoint{0.2, -0.3, 0.4}, PhasePoint{-0.6, 0.5, 0.1}}) {
            const GridField eng = defect_via_representation(s, 1.0, pin_grid(z));
            const double chart = representation_at(s, 1.0, z);
            CHECK(eng.samples[0] == doctest::Approx(chart).epsilon(1e-10));
        }
    }
}

TEST_CASE("defect_direct subtracts the mollification from the field") {
    const TransportSplit s = make_gaussian_split(SplitVariant::S0Zero);
    const GridSpec g = cube(3, 1.0);
    const GridField d = defect_direct(s, 1.0, g);
    const GridField m = mollify(s.f.analytic, 1.0, g, EngineOptions{}, s.f.separable);
    const GridField f = sample(s.f.analytic, g);
    for (std::size_t i = 0; i < d.samples.size(); ++i)
        CHECK(d.samples[i] ==
              doctest::Approx(f.samples[i] - m.samples[i]).epsilon(1e-12));
}

TEST_CASE("representation formula rebuilds the defect on a small grid") {
    const TransportSplit s = make_gaussian_split(SplitVariant::S0Zero);
    const GridSpec g = cube(12, 6.0);
    const GridField direct = defect_direct(s, 1.0, g);
    const GridField rep = defect_via_representation(s, 1.0, g);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < direct.samples.size(); ++i) {
        num += (rep.samples[i] - direct.samples[i]) * (rep.samples[i] - direct.samples[i]);
        den += direct.samples[i] * direct.samples[i];
    }
    CHECK(std::sqrt(num / den) < 2e-3);
}

TEST_CASE("representation rejects a starved r-schedule") {
    const TransportSplit s = make_gaussian_split(SplitVariant::S0Zero);
    EngineOptions opt;
    opt.r_levels = 2;
    opt.r_inner_pts = 2;
    opt.r_outer_panels = 1;
    opt.r_outer_pts = 4;  // 8 nodes total
    CHECK_THROWS_AS(defect_via_representation(s, 1.0, cube(2, 1.0), opt),
                    std::invalid_argument);
}

TEST_CASE("engine option presets are graded") {
    const EngineOptions d{};
    const EngineOptions r = refined_engine_options();
    const EngineOptions q = quick_engine_options();
    CHECK(r.outer_nodes > d.outer_nodes);
    CHECK(r.r_levels > d.r_levels);
    CHECK(q.outer_nodes < d.outer_nodes);
    const RSchedule sd = make_r_schedule(1.0, d.r_levels, d.r_inner_pts, d.r_outer_panels,
                                         d.r_outer_pts);
    const RSchedule sq = make_r_schedule(1.0, q.r_levels, q.r_inner_pts, q.r_outer_panels,
                                         q.r_outer_pts);
    CHECK(sq.r.size() >= 16);  // quick preset must stay above the engine floor
    CHECK(sd.r.size() > sq.r.size());
}

TEST_CASE("besov tail constant is positive and modest") {
    const TransportSplit s = make_gaussian_split(SplitVariant::S0Zero);
    const double c =
        besov_tail_constant(s, 1.0, {0.5, 1.0, 2.0}, cube(16, 6.0), quick_engine_options());
    CHECK(c > 0.0);
    CHECK(c < 10.0);
}
