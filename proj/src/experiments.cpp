#include "kinverify/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinverify/bump.hpp"
#include "kinverify/convolve.hpp"
#include "kinverify/field.hpp"
#include "kinverify/fractional.hpp"
#include "kinverify/kernels.hpp"
#include "kinverify/phase.hpp"
#include "kinverify/quadrature.hpp"
#include "kinverify/spectral.hpp"
#include "kinverify/trajectory.hpp"

namespace kinv {

double derived_q(double p) { return 1.0 / (1.0 / p + 1.0 / kQ); }

double sigma_exponent() { return 2.0 / 3.0 - (kDimD + 1.0) / kQ; }

BalanceResult balance_lambda(const CorollaryInputs& in) {
    const double B = in.B, C = in.C, D = in.D;
    const double sigma = sigma_exponent();
    BalanceResult res;
    auto objective = [&](double lam) {
        return B * std::pow(lam, -1.0 / 3.0) + C * std::pow(lam, 2.0 / 3.0) +
               D * std::pow(lam, sigma);
    };
    if (B <= 0.0) {
        // no gradient penalty: the bound degenerates as lambda -> 0
        res.lambda = 0.0;
        res.bound = 0.0;
        res.branch = "degenerate_b";
        return res;
    }
    if (C <= 0.0 && D <= 0.0) {
        res.lambda = std::numeric_limits<double>::infinity();
        res.bound = 0.0;
        res.branch = "degenerate_cd";
        return res;
    }
    const double inf = std::numeric_limits<double>::infinity();
    const double lam0 = C > 0.0 ? B / C : inf;
    const double lam1 = D > 0.0 ? std::pow(B / D, 1.0 / (sigma + 1.0 / 3.0)) : inf;
    if (lam0 <= lam1) {
        res.lambda = lam0;
        res.branch = "lambda0";
    } else {
        res.lambda = lam1;
        res.branch = "lambda1";
    }
    res.bound = objective(res.lambda);
    return res;
}

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double rel_err(double measured, double target) {
    const double scale = std::max(std::fabs(target), 1e-300);
    return std::fabs(measured - target) / scale;
}

double max_abs3(const PhasePoint& z) {
    return std::max({std::fabs(z.t), std::fabs(z.x), std::fabs(z.v)});
}

double diff3(const PhasePoint& a, const PhasePoint& b) {
    return max_abs3({a.t - b.t, a.x - b.x, a.v - b.v});
}

// || a - b ||_2 / || b ||_2 on a shared grid (cell volume cancels).
double rel_l2_diff(const GridField& a, const GridField& b) {
    double num2 = 0.0, den2 = 0.0;
    for (std::size_t i = 0; i < b.samples.size(); ++i) {
        const double d = a.samples[i] - b.samples[i];
        num2 += d * d;
        den2 += b.samples[i] * b.samples[i];
    }
    if (den2 <= 0.0) return std::sqrt(num2);
    return std::sqrt(num2 / den2);
}

std::vector<double> log_view(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::log(v[i]);
    return out;
}

PhasePoint draw_point(std::mt19937_64& rng, double box) {
    std::uniform_real_distribution<double> u(-box, box);
    return {u(rng), u(rng), u(rng)};
}

}  // namespace

ReportSet verify_group_suite(bool quick) {
    ReportSet out;
    auto rng = make_rng(101);
    const int draws = quick ? 25 : 80;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> ur(0.25, 4.0);
    auto draw = [&] { return PhasePoint{u(rng), u(rng), u(rng)}; };

    double inv_err = 0.0, assoc_err = 0.0, morph_err = 0.0;
    double rho_err = 0.0, tri_max = 0.0;
    for (int i = 0; i < draws; ++i) {
        const PhasePoint a = draw(), b = draw(), c = draw();
        const double r = ur(rng);
        inv_err = std::max(inv_err, max_abs3(compose(a, inverse(a))));
        inv_err = std::max(inv_err, max_abs3(compose(inverse(a), a)));
        assoc_err = std::max(assoc_err,
                             diff3(compose(compose(a, b), c), compose(a, compose(b, c))));
        morph_err = std::max(morph_err,
                             diff3(dilate(r, compose(a, b)),
                                   compose(dilate(r, a), dilate(r, b))));
        rho_err = std::max(rho_err, rel_err(rho_box(dilate(r, a)), r * rho_box(a)));
        const double denom = rho_box(a) + rho_box(b);
        if (denom > 1e-12)
            tri_max = std::max(tri_max, rho_box(compose(a, b)) / denom);
    }
    const std::string params = "draws=" + std::to_string(draws);
    out.add(make_report("group/inverse", params, inv_err, 0.0, 1e-12));
    out.add(make_report("group/associativity", params, assoc_err, 0.0, 1e-12));
    out.add(make_report("group/dilation_morphism", params, morph_err, 0.0, 1e-11));
    out.add(make_report("group/rho_dilation", params, rho_err, 0.0, 1e-12));
    out.add(make_bound_report("group/rho_triangle", params, tri_max, 1.0 + 1e-12,
                              "rho(z o w) <= rho(z) + rho(w) holds with constant 1"));

    double vol_err = 0.0;
    for (double r : {0.5, 1.0, 2.0})
        vol_err = std::max(vol_err, rel_err(kinetic_ball_volume(r), 8.0 * std::pow(r, 6)));
    out.add(make_report("group/ball_volume", "r=0.5,1,2", vol_err, 0.0, 1e-12,
                        "|B_r| = 8 r^6 in d = 1"));
    out.add(make_report("group/doubling", "r=1",
                        kinetic_ball_volume(2.0) / kinetic_ball_volume(1.0), 64.0, 1e-12,
                        "2^Q with Q = 6"));
    return out;
}

ReportSet verify_trajectory_suite(bool quick) {
    ReportSet out;
    auto rng = make_rng(211);

    double det_rel = 0.0;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0})
        for (double m0 : {-2.0, -1.5, -1.0})
            det_rel = std::max(det_rel, rel_err(mat_A_det(m0, r), -0.5 * std::pow(r, 4)));
    out.add(make_report("traj/det_identity", "r=0.25..4,m0=-2..-1", det_rel, 0.0, 1e-12,
                        "det A_{m0}(r) = -r^4/2"));

    const ForcingValues fv = forcing(1.0);
    const double ferr = std::max({std::fabs(fv.g1), std::fabs(fv.g2 - 1.0),
                                  std::fabs(fv.h1 - 0.5), std::fabs(fv.h2 - 1.5),
                                  std::fabs(fv.f1 - 2.0), std::fabs(fv.f2 - 1.0)});
    out.add(make_report("traj/forcing_r1", "r=1", ferr, 0.0, 1e-15,
                        "(g1,g2,h1,h2,f1,f2) = (0,1,1/2,3/2,2,1)"));

    const PhasePoint ep = endpoint({-1.0, 1.0, 0.0}, 1.0, origin());
    out.add(make_report("traj/endpoint_frozen", "m=(-1,1,0),r=1",
                        diff3(ep, {-1.0, 0.0, -0.5}), 0.0, 1e-15));

    std::uniform_real_distribution<double> um0(-2.0, -1.0);
    std::uniform_real_distribution<double> umag(0.2, 1.0);
    std::uniform_real_distribution<double> usign(0.0, 1.0);
    std::uniform_real_distribution<double> urad(0.5, 2.0);
    std::uniform_real_distribution<double> uwide(0.25, 4.0);
    auto draw_m = [&] {
        TrajectoryParams m;
        m.m0 = um0(rng);
        m.m1 = umag(rng) * (usign(rng) < 0.5 ? -1.0 : 1.0);
        m.m2 = umag(rng) * (usign(rng) < 0.5 ? -1.0 : 1.0);
        return m;
    };

    double inv_round = 0.0;
    for (int i = 0; i < 40; ++i) {
        const TrajectoryParams m = draw_m();
        const double r = urad(rng);
        const PhasePoint off = endpoint(m, r, origin());
        const TrajectoryParams back = endpoint_inverse_params(r, off);
        inv_round = std::max(inv_round, std::max({std::fabs(back.m0 - m.m0),
                                                  std::fabs(back.m1 - m.m1),
                                                  std::fabs(back.m2 - m.m2)}));
    }
    out.add(make_report("traj/endpoint_inverse", "draws=40", inv_round, 0.0, 1e-12));

    const int n_m1 = quick ? 20 : 50;
    double ratio_min = std::numeric_limits<double>::infinity();
    double ratio_max = 0.0, gdt_err = 0.0;
    int skipped = 0;
    for (int i = 0; i < n_m1; ++i) {
        const TrajectoryParams m = draw_m();
        const double r = urad(rng);
        const PhasePoint z = draw_point(rng, 2.0);
        const M1Result res = verify_M1(m, r, 0.1 * r, z);
        gdt_err = std::max(gdt_err, res.gamma_dot_t_error);
        if (res.residual_half < 1e-12) {
            ++skipped;  // residual at the noise floor; ratio undefined
            continue;
        }
        const double ratio = res.residual / res.residual_half;
        ratio_min = std::min(ratio_min, ratio);
        ratio_max = std::max(ratio_max, ratio);
    }
    const std::string m1p = "draws=" + std::to_string(n_m1) + ",dr=0.1r";
    const std::string m1note =
        skipped > 0 ? "skipped " + std::to_string(skipped) + " noise-floor draws" : "";
    out.add(make_report("traj/m1_ratio_min", m1p, ratio_min, 4.0, 0.6, m1note));
    out.add(make_report("traj/m1_ratio_max", m1p, ratio_max, 4.0, 0.6, m1note));
    out.add(make_report("traj/gamma_dot_t", m1p, gdt_err, 0.0, 1e-10,
                        "central difference of t-component is exact"));

    double c_dot = 0.0, c_devv = 0.0, c_devx = 0.0;
    for (int i = 0; i < 60; ++i) {
        const TrajectoryParams m = draw_m();
        const double r = uwide(rng);
        const M4Result res = verify_M4(m, r, draw_point(rng, 2.0));
        if (res.envelope_v > 0.0) {
            c_dot = std::max(c_dot, res.dot_v / res.envelope_v);
            c_devv = std::max(c_devv, res.dev_v / res.envelope_v);
        }
        if (res.envelope_x > 0.0)
            c_devx = std::max(c_devx, res.dev_x / res.envelope_x);
    }
    out.add(make_bound_report("traj/m4_dot_v", "draws=60", c_dot,
                              std::sqrt(5.0) + 1e-12, "|f| row norm sqrt(5)"));
    out.add(make_bound_report("traj/m4_dev_v", "draws=60", c_devv,
                              0.5 * std::sqrt(10.0) + 1e-12, "|h| row norm sqrt(10)/2"));
    out.add(make_bound_report("traj/m4_dev_x", "draws=60", c_devx, 1.0 + 1e-12,
                              "|g| row norm 1"));

    // position offset of m = (-1, 0, 1) from the origin is r^3 |cos log r|;
    // on a log-symmetric radius set the oscillation averages out of the fit
    std::vector<double> logr, logoff;
    for (double uexp : {-0.4, -0.2, 0.0, 0.2, 0.4}) {
        const double r = std::exp(uexp);
        const PhasePoint off = endpoint({-1.0, 0.0, 1.0}, r, origin());
        logr.push_back(uexp);
        logoff.push_back(std::log(std::fabs(off.x)));
    }
    out.add(make_report("traj/offset_r3_slope", "m=(-1,0,1)",
                        fit_slope(logr, logoff), 3.0, 1e-9));
    return out;
}

ReportSet verify_kernel_suite(bool quick) {
    ReportSet out;
    auto rng = make_rng(307);
    const int nodes = quick ? 32 : 64;
    const std::string nn = "nodes=" + std::to_string(nodes);

    for (double tau : {0.5, 1.0, 2.0}) {
        const double m = kernel_mass({KernelKind::Mollifier, tau}, nodes);
        out.add(make_report("kernel/mass", "tau=" + num(tau) + "," + nn, m, 1.0,
                            quick ? 1e-4 : 1e-6));
    }
    for (double r : {0.5, 1.0, 2.0}) {
        const double m = kernel_mass({KernelKind::Tilde, r}, nodes);
        out.add(make_report("kernel/tilde_mass", "r=" + num(r) + "," + nn, m, 3.0 * r,
                            (quick ? 1e-4 : 3e-6) * r, "mass(Ktilde_r) = 3r"));
    }
    for (KernelKind k : {KernelKind::Vec, KernelKind::VecPi}) {
        const double m = kernel_mass({k, 1.0}, nodes);
        out.add(make_report("kernel/odd_mass", kernel_name({k, 1.0}), m, 0.0, 1e-11,
                            "odd in (y, w): mass vanishes"));
    }

    std::vector<double> tn;
    for (double r : {0.25, 0.5, 1.0, 2.0})
        tn.push_back(kernel_norm({KernelKind::Tilde, r}, 1.2, nodes));
    for (std::size_t i = 0; i < tn.size(); ++i)
        out.add(make_report("kernel/tilde_norm65", "r=" + num(0.25 * (1 << i)), tn[i],
                            3.0450889238, quick ? 1e-3 : 1e-5,
                            "||Ktilde_r||_{6/5} is r-free"));

    const double sup1 = kernel_sup({KernelKind::Mollifier, 1.0}, nodes);
    out.add(make_report("kernel/sup", "tau=1," + nn, sup1, 2.2753372740,
                        quick ? 0.05 : 0.01, "node max of 2 psi(center)"));
    double sup_spread = 0.0;
    for (double r : {0.5, 2.0})
        sup_spread = std::max(sup_spread,
                              rel_err(kernel_sup({KernelKind::Mollifier, r}, nodes) *
                                          std::pow(r, 6),
                                      sup1));
    out.add(make_report("kernel/sup_dilation", "r=0.5,2", sup_spread, 0.0, 1e-9,
                        "sup K_r r^Q matches sup K_1 nodewise"));

    for (KernelKind k :
         {KernelKind::Mollifier, KernelKind::Tilde, KernelKind::Vec, KernelKind::VecPi}) {
        const double c = support_constant({k, 1.0}, quick ? 32 : 48);
        out.add(make_bound_report("kernel/support_constant", kernel_name({k, 1.0}), c,
                                  std::sqrt(5.0) + 1e-9,
                                  "rho_box over support <= sqrt(5) sigma"));
    }

    std::uniform_real_distribution<double> us(-2.0, -1.0);
    std::uniform_real_distribution<double> uy(-2.3, 2.3);
    std::uniform_real_distribution<double> uw(-2.3, 2.3);
    double even_err = 0.0, odd_err = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double s = us(rng), y = uy(rng), w = uw(rng);
        for (KernelKind k : {KernelKind::Mollifier, KernelKind::Tilde})
            even_err = std::max(even_err, std::fabs(kernel_eval({k, 1.0}, s, -y, -w) -
                                                    kernel_eval({k, 1.0}, s, y, w)));
        for (KernelKind k : {KernelKind::Vec, KernelKind::VecPi})
            odd_err = std::max(odd_err, std::fabs(kernel_eval({k, 1.0}, s, -y, -w) +
                                                  kernel_eval({k, 1.0}, s, y, w)));
    }
    out.add(make_report("kernel/even_pair", "draws=200", even_err, 0.0, 1e-12,
                        "K and Ktilde are even in (y, w)"));
    out.add(make_report("kernel/odd_pair", "draws=200", odd_err, 0.0, 1e-12,
                        "Kvec and Kvecpi are odd in (y, w)"));

    const std::vector<double> radii = quick ? std::vector<double>{1.0}
                                            : std::vector<double>{0.25, 0.5, 1.0, 2.0};
    for (double r : radii) {
        const double r3 = r * r * r;
        std::vector<double> lh, ln, hh, hn;
        for (double c : {0.05, 0.1, 0.2}) {
            lh.push_back(std::log(c * r3));
            ln.push_back(std::log(
                kernel_x_difference_norm({KernelKind::Mollifier, r}, c * r3, 1.0, nodes)));
        }
        for (double c : {4.0, 8.0, 16.0}) {
            hh.push_back(std::log(c * r3));
            hn.push_back(std::log(
                kernel_x_difference_norm({KernelKind::Mollifier, r}, c * r3, 1.0, nodes)));
        }
        out.add(make_report("kernel/diff_slope_small", "r=" + num(r),
                            fit_slope(lh, ln), 1.0, 0.1,
                            "h = (0.05, 0.1, 0.2) r^3"));
        out.add(make_report("kernel/diff_slope_large", "r=" + num(r),
                            fit_slope(hh, hn), 0.0, 0.05, "h = (4, 8, 16) r^3"));
    }

    double env = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
        const double r3 = r * r * r;
        for (double c : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double d =
                kernel_x_difference_norm({KernelKind::Tilde, r}, c * r3, 1.2, nodes);
            env = std::max(env, d / std::min(1.0, c));
        }
    }
    out.add(make_bound_report("kernel/tilde_envelope", "r=0.5,1,2;h/r3=0.5..8", env, 25.0,
                              "||Delta_h Ktilde_r||_{6/5} <= C min(1, h r^-3)"));

    std::vector<double> gr, gv;
    for (double r : {0.5, 1.0, 2.0}) {
        gr.push_back(std::log(r));
        gv.push_back(std::log(kernel_grad_y_l1({KernelKind::Vec, r}, quick ? 32 : 48)));
    }
    out.add(make_report("kernel/grad_y_l1_slope", "r=0.5,1,2", fit_slope(gr, gv), -3.0,
                        0.2, "||d_y Kvec_r||_1 = c(log r) r^-3; the forcing row "
                             "modulates the constant"));
    return out;
}

ReportSet verify_defect_suite(int grid_n, double tau, bool quick, bool with_refinement) {
    ReportSet out;
    auto rng = make_rng(401);
    const TransportSplit sz = make_gaussian_split(SplitVariant::S0Zero);
    const TransportSplit sg = make_gaussian_split(SplitVariant::S0Generic);

    for (const TransportSplit* s : {&sz, &sg}) {
        double res = 0.0;
        for (int i = 0; i < 50; ++i)
            res = std::max(res, split_residual(*s, draw_point(rng, 2.5)));
        out.add(make_report("defect/split_residual", s->name, res, 0.0, 1e-10,
                            "(d_t + v d_x) f = d_v S0 + S1"));
    }

    double sep_err = 0.0;
    for (const TransportSplit* s : {&sz, &sg}) {
        const FieldPair* pairs[] = {&s->f, &s->S0, &s->S1, &s->div_v_S0, &s->vgrad_f};
        for (const FieldPair* p : pairs) {
            if (!p->has_fast() || p->zero) continue;
            for (int i = 0; i < 50; ++i) {
                const PhasePoint z = draw_point(rng, 2.5);
                sep_err = std::max(sep_err, std::fabs(sep_eval(p->separable, z) -
                                                      p->analytic.eval(z)));
            }
        }
    }
    out.add(make_report("defect/separable_consistency", "draws=50/field", sep_err, 0.0,
                        1e-12, "separable forms match the analytic evaluators"));

    {
        const int npts = quick ? 20 : 100;
        const int t_out = quick ? 20 : 28, t_in = quick ? 24 : 36;
        ConvolveOptions copt;
        copt.nodes_s = quick ? 24 : 32;
        copt.nodes_b = quick ? 24 : 32;
        double c4 = 0.0;
        for (int i = 0; i < npts; ++i) {
            const PhasePoint z = draw_point(rng, 2.0);
            const double a = trajectory_average(sz.f.analytic, 1.0, z, t_out, t_in);
            const double b =
                kinetic_convolve_at({KernelKind::Mollifier, 1.0}, sz.f.analytic, z, copt);
            c4 = std::max(c4, std::fabs(a - b));
        }
        out.add(make_report("defect/average_vs_convolve",
                            "pts=" + std::to_string(npts) + ",tau=1", c4, 0.0,
                            quick ? 1e-4 : 1e-6,
                            "trajectory average against the (s, y, w) convolution"));
    }

    {
        const PhasePoint z0{0.3, -0.2, 0.5};
        const double fz = sz.f.analytic.eval(z0);
        const double e1 = std::fabs(trajectory_average(sz.f.analytic, 0.5, z0) - fz);
        const double e2 = std::fabs(trajectory_average(sz.f.analytic, 0.25, z0) - fz);
        out.add(make_bound_report("defect/mollify_consistent", "tau=0.5->0.25", e2 / e1,
                                  0.6, "defect shrinks ~tau^2 at a fixed point"));
    }

    {
        GridSpec small;
        small.nt = small.nx = small.nv = 8;
        small.T = small.X = small.V = 4.0;
        const EngineOptions eng = quick ? quick_engine_options() : EngineOptions{};
        ConvolveOptions copt;
        copt.nodes_s = quick ? 16 : 32;
        copt.nodes_b = quick ? 16 : 32;
        const GridField a = mollify(sz.f.analytic, 1.0, small, eng, sz.f.separable);
        const GridField b =
            kinetic_convolve({KernelKind::Mollifier, 1.0}, sz.f.analytic, small, copt);
        double derr = 0.0;
        for (std::size_t i = 0; i < a.samples.size(); ++i)
            derr = std::max(derr, std::fabs(a.samples[i] - b.samples[i]));
        out.add(make_report("defect/mollify_two_paths", "grid=8^3", derr, 0.0,
                            quick ? 1e-3 : 1e-6,
                            "separable engine vs direct kernel quadrature"));
    }

    const EngineOptions eng = quick ? quick_engine_options() : EngineOptions{};
    GridSpec big;
    big.nt = big.nx = big.nv = grid_n;
    big.T = big.X = big.V = 8.0;
    const double rep_tol = quick ? 5e-3 : 1e-3;

    GridField rep_z, rep_g, direct_z;
    for (const TransportSplit* s : {&sz, &sg}) {
        const GridField direct = defect_direct(*s, tau, big, eng);
        const GridField rep = defect_via_representation(*s, tau, big, eng);
        const double rel = rel_l2_diff(rep, direct);
        out.add(make_report("defect/representation", s->name + ",n=" + std::to_string(grid_n) +
                                ",tau=" + num(tau),
                            rel, 0.0, rep_tol,
                            "relative L2 gap between defect and its r-integral"));
        if (s == &sz) {
            rep_z = rep;
            direct_z = direct;
        } else {
            rep_g = rep;
        }
    }
    out.add(make_report("defect/splitting_independence", "n=" + std::to_string(grid_n),
                        rel_l2_diff(rep_g, rep_z), 0.0, rep_tol,
                        "S0-zero and generic splittings rebuild the same defect"));

    out.add(make_report("defect/golden_l2", "n=" + std::to_string(grid_n) + ",tau=" + num(tau),
                        lp_norm(direct_z, 2.0), quick ? lp_norm(direct_z, 2.0) : 2.2303362308,
                        quick ? 1e-6 : 5e-4, quick ? "reduced grid; recorded only" : "frozen L2 norm of the tau=1 defect"));

    if (with_refinement && !quick) {
        GridSpec sub;
        sub.nt = sub.nx = sub.nv = 8;
        sub.T = sub.X = sub.V = 8.0;
        const GridField ref_direct = defect_direct(sz, tau, sub, refined_engine_options());
        const double e0 =
            rel_l2_diff(defect_via_representation(sz, tau, sub, EngineOptions{}), ref_direct);
        const double e1 = rel_l2_diff(
            defect_via_representation(sz, tau, sub, refined_engine_options()), ref_direct);
        out.add(make_bound_report("defect/refinement_gain", "8^3 probe", e1 / e0, 0.5,
                                  "doubled r-nodes and m-resolution halve the error"));
        out.add(make_bound_report("defect/refined_residual", "8^3 probe", e1, 1e-3));
    }

    if (!quick) {
        GridSpec mid;
        mid.nt = mid.nx = mid.nv = 24;
        mid.T = mid.X = mid.V = 8.0;
        double prev = -1.0, worst = 0.0;
        for (double t : {1.0, 0.5, 0.25}) {
            const double n = lp_norm(defect_direct(sz, t, mid, eng), 2.0);
            if (prev > 0.0) worst = std::max(worst, n / prev);
            prev = n;
        }
        out.add(make_bound_report("defect/tau_monotone", "tau=1,0.5,0.25", worst, 1.0,
                                  "defect L2 norm decreases with tau"));

        GridSpec bg;
        bg.nt = bg.nx = bg.nv = 32;
        bg.T = bg.X = bg.V = 8.0;
        const double ct = besov_tail_constant(sz, 1.0, {0.25, 0.5, 1.0, 2.0, 4.0}, bg, eng);
        out.add(make_bound_report("defect/besov_tail", "tau=1,h=0.25..4", ct, 10.0,
                                  "||Delta_h T f||_2 <= C min(1, h tau^-3) ||f||_2"));
    }
    return out;
}

ReportSet run_lp_suite(bool quick) {
    ReportSet out;
    auto rng = make_rng(509);
    GridSpec g;
    g.nt = 2;
    g.nx = quick ? 256 : 1024;
    g.nv = 2;
    g.T = 1.0;
    g.X = 8.0;
    g.V = 1.0;
    GridField f(g);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (double& s : f.samples) s = nd(rng);

    const LPBank bank = LPBank::for_grid(g);
    GridField acc(g);
    for (int j = bank.j_min; j <= bank.j_max; ++j) {
        const GridField pj = lp_project(f, j, bank);
        for (std::size_t i = 0; i < acc.samples.size(); ++i)
            acc.samples[i] += pj.samples[i];
    }
    // the projections remove the DC bin of each x-row separately, so restore
    // the mean per (t, v) row rather than globally
    for (int i = 0; i < g.nt; ++i)
        for (int l = 0; l < g.nv; ++l) {
            double mean = 0.0;
            for (int jx = 0; jx < g.nx; ++jx) mean += f.at(i, jx, l);
            mean /= g.nx;
            for (int jx = 0; jx < g.nx; ++jx) acc.at(i, jx, l) += mean;
        }
    out.add(make_report("lp/reconstruction",
                        "n=" + std::to_string(g.nx) + ",j=" + std::to_string(bank.j_min) +
                            ".." + std::to_string(bank.j_max),
                        rel_l2_diff(acc, f), 0.0, 1e-10,
                        "sum of projections plus the mean restores the field"));

    const int js[3] = {bank.j_min, (bank.j_min + bank.j_max) / 2, bank.j_max};
    for (int j : js) {
        const PsiIdentityResult r = psi_j_identity_check(f, j, bank);
        out.add(make_report("lp/psi_multiplier", "j=" + std::to_string(j),
                            r.multiplier_residual, 0.0, 1e-10,
                            "eta_j = 2^-j (i xi) Psi^_j eta~_j on the grid"));
        out.add(make_report("lp/psi_field", "j=" + std::to_string(j), r.field_residual,
                            0.0, 1e-10));
    }

    GridField h = f;
    for (int k = 0; k < 3; ++k) h = frac_dx_spectral(h, 1.0 / 3.0);
    out.add(make_report("lp/triple_third", "n=" + std::to_string(g.nx),
                        rel_l2_diff(h, frac_dx_spectral(f, 1.0)), 0.0, 1e-10,
                        "(D_x^{1/3})^3 = D_x on the grid"));

    double l1_min = std::numeric_limits<double>::infinity(), l1_max = 0.0;
    for (int j = 1; j <= 5; ++j) {
        const double v = psi_j_l1_norm(j, quick ? 2048 : 4096, 64.0);
        l1_min = std::min(l1_min, v);
        l1_max = std::max(l1_max, v);
    }
    out.add(make_bound_report("lp/psi_l1_uniform", "j=1..5", l1_max / l1_min, 2.0,
                              "||Psi_j||_1 is uniform in j"));
    return out;
}

ReportSet run_commute_suite(bool quick) {
    ReportSet out;
    if (quick) {
        CommuteConfig q;
        q.cell_n = 512;
        q.nodes_s = 8;
        q.nodes_w = 10;
        out.add(make_report("commute/quick", "n=512", commute_check(q).rel_l2, 0.0, 3e-3,
                            "reduced cell; default run uses n=2048"));
        return out;
    }
    CommuteConfig d;
    const double ed = commute_check(d).rel_l2;
    CommuteConfig r;
    r.cell_n = 4096;
    r.nodes_s = 24;
    r.nodes_w = 32;
    const double er = commute_check(r).rel_l2;
    out.add(make_report("commute/default", "n=2048", ed, 0.0, 1e-3,
                        "spectral derivative of T f vs singular-integral derivative of K"));
    out.add(make_report("commute/refined", "n=4096", er, 0.0, 1e-3));
    out.add(make_bound_report("commute/decreasing", "refined/default", er / ed, 0.8,
                              "the mismatch shrinks under refinement"));
    return out;
}

ReportSet run_step5_suite(bool quick) {
    ReportSet out;
    const std::vector<double> taus =
        quick ? std::vector<double>{1.0, 2.0, 4.0} : std::vector<double>{1.0, 2.0, 4.0, 8.0};
    const int line_n = quick ? 1024 : 2048;
    const int ns = quick ? 12 : 16, nw = quick ? 16 : 20;

    std::vector<double> logt, logn;
    for (double tau : taus) {
        const double n1 = frac13_kernel_l1(tau, ns, nw, line_n, 6.0);
        logt.push_back(std::log(tau));
        logn.push_back(std::log(n1));
        out.add(make_bound_report("step5/kernel_l1_scaled", "tau=" + num(tau), tau * n1,
                                  25.0, "tau ||D_y^{1/3} K_tau||_1 stays bounded"));
    }
    out.add(make_report("step5/kernel_l1_slope", "tau=1..8", fit_slope(logt, logn), -1.0,
                        0.15, "||D_y^{1/3} K_tau||_1 ~ tau^-1"));

    const TransportSplit sz = make_gaussian_split(SplitVariant::S0Zero);
    const EngineOptions eng = quick ? quick_engine_options() : EngineOptions{};
    for (double tau : taus) {
        GridSpec g;
        g.nt = g.nv = quick ? 32 : 48;
        g.nx = 64;
        g.T = 0.5 * tau * tau + 6.5;
        g.X = 6.5 + 2.3 * tau * tau * tau + 13.0 * tau * tau;
        g.V = 6.5;
        g.ct = 1.5 * tau * tau;
        const GridField m = mollify(sz.f.analytic, tau, g, eng, sz.f.separable);
        const double nrm = lp_norm(frac_dx_spectral(m, 1.0 / 3.0), 2.0);
        out.add(make_bound_report("step5/field_product", "tau=" + num(tau), tau * nrm, 5.0,
                                  "tau ||D_x^{1/3} T_{K_tau} f||_2 on a drift-adapted box"));
    }
    return out;
}

namespace {

struct ScaledMember {
    AnalyticField f, S0, S1, vgrad, div_S0, transport_f;
    bool S0_zero = false;
    GridSpec grid;
};

AnalyticField scale_txv(const AnalyticField& base, double lambda, double pre) {
    AnalyticField out;
    const auto ev = base.eval;
    out.eval = [ev, lambda, pre](const PhasePoint& z) {
        return pre * ev({lambda * z.t, lambda * z.x, z.v});
    };
    return out;
}

// f_lambda(t, x, v) = f(lambda t, lambda x, v); the transport identity scales to
// (d_t + v d_x) f_lambda = d_v [lambda S0(lambda .)] + lambda S1(lambda .).
ScaledMember make_scaled(const TransportSplit& s, double lambda, int n) {
    ScaledMember m;
    m.f = scale_txv(s.f.analytic, lambda, 1.0);
    m.S0 = scale_txv(s.S0.analytic, lambda, lambda);
    m.S1 = scale_txv(s.S1.analytic, lambda, lambda);
    m.vgrad = scale_txv(s.vgrad_f.analytic, lambda, 1.0);
    m.div_S0 = scale_txv(s.div_v_S0.analytic, lambda, lambda);
    {
        AnalyticField t;
        const auto tr = s.f.analytic.transport;
        t.eval = [tr, lambda](const PhasePoint& z) {
            return lambda * tr({lambda * z.t, lambda * z.x, z.v});
        };
        m.transport_f = t;
    }
    m.S0_zero = s.S0.zero;
    int nx = 1;
    while (nx < n) nx <<= 1;
    m.grid.nt = m.grid.nv = n;
    m.grid.nx = nx;
    m.grid.T = 8.0 / lambda;
    m.grid.X = 8.0 / lambda;
    m.grid.V = 8.0;
    return m;
}

// Shared lambda-sweep of the transfer inequality; `besov` selects the
// difference-quotient seminorm on the left, otherwise D_x^{1/3} in L^p.
//
// The base split is expressed in units where the balance point
// lambda_1 = (B/D)^{3/2} of the lambda-weighted objective sits near the middle
// of the sweep (for the unit Gaussian it is ~0.27, i.e. at the edge).  The
// 16x dilation range then brackets the regime the estimate actually balances;
// sweeping around un-normalized units only rides the decaying tail of the
// ratio curve and every sampled trend is monotone.
constexpr double kBalanceUnits = 0.3;

void transfer_sweep(ReportSet& out, const ExperimentConfig& cfg, bool besov) {
    const std::string tag = besov ? "besov" : "sobolev";
    const TransportSplit base = make_gaussian_split(cfg.family);
    const std::string fam = base.name;
    const int n = cfg.quick ? 24 : cfg.grid_n;

    std::vector<ScaledMember> members;
    for (double lam : cfg.lambda_list)
        members.push_back(make_scaled(base, kBalanceUnits * lam, n));

    auto rng = make_rng(613);
    double resid = 0.0;
    for (const ScaledMember& m : members)
        for (int i = 0; i < 20; ++i) {
            const PhasePoint z = draw_point(rng, 2.0);
            resid = std::max(resid, std::fabs(m.transport_f.eval(z) - m.div_S0.eval(z) -
                                              m.S1.eval(z)));
        }
    out.add(make_report(tag + "/rescaled_residual", fam, resid, 0.0, 1e-10,
                        "transport identity survives the anisotropic rescaling"));

    std::vector<double> ps;
    if (cfg.p != 2.0)
        ps = {cfg.p};
    else if (besov)
        ps = {1.5, 2.0, 3.0};
    else
        ps = {2.0, 3.0};

    for (double p : ps) {
        const double q = derived_q(p);
        std::vector<double> ratios;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const ScaledMember& m = members[i];
            const double lam = cfg.lambda_list[i];
            const double B = lp_norm(sample(m.vgrad, m.grid), p);
            const double C = m.S0_zero ? 0.0 : lp_norm(sample(m.S0, m.grid), p);
            const double D = lp_norm(sample(m.S1, m.grid), q);
            double lhs;
            if (besov) {
                // shifts fixed in the member's own scaled x-units
                std::vector<double> hs;
                for (double h0 : {0.125, 0.25, 0.5, 1.0, 2.0})
                    hs.push_back(h0 / (kBalanceUnits * lam));
                lhs = besov_seminorm(m.f, p, hs, m.grid);
            } else {
                lhs = lp_norm(frac_dx_spectral(sample(m.f, m.grid), 1.0 / 3.0), p);
            }
            const double ratio = lhs / (B + C + D);
            ratios.push_back(ratio);
            out.add(make_bound_report(tag + "/ratio",
                                      fam + ",p=" + num(p) + ",lambda=" + num(lam), ratio,
                                      100.0, "regularity norm over source norms"));
        }
        const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
        out.add(make_bound_report(tag + "/ratio_spread", fam + ",p=" + num(p), *mx / *mn,
                                  10.0, "one constant covers the lambda sweep"));
        out.add(make_bound_report(tag + "/ratio_trend", fam + ",p=" + num(p),
                                  std::fabs(spearman_rho(cfg.lambda_list, ratios)), 0.8,
                                  "no monotone drift across lambda"));
    }

    if (!besov) {
        // Littlewood-Paley square function against the fractional derivative
        std::size_t i1 = 0;
        for (std::size_t i = 0; i < cfg.lambda_list.size(); ++i)
            if (std::fabs(cfg.lambda_list[i] - 1.0) <
                std::fabs(cfg.lambda_list[i1] - 1.0))
                i1 = i;
        const GridField fs = sample(members[i1].f, members[i1].grid);
        const LPBank bank = LPBank::for_grid(members[i1].grid);
        const double sf = lp_norm(square_function(fs, bank), 2.0);
        const double fr = lp_norm(frac_dx_spectral(fs, 1.0 / 3.0), 2.0);
        out.add(make_report("sobolev/square_function", "lambda=" + num(cfg.lambda_list[i1]),
                            sf / fr, 1.0, 0.75,
                            "square function comparable to D_x^{1/3} in L2"));
    }
}

}  // namespace

ReportSet run_besov_experiment(const ExperimentConfig& cfg) {
    ReportSet out;
    transfer_sweep(out, cfg, true);
    return out;
}

ReportSet run_sobolev_experiment(const ExperimentConfig& cfg) {
    ReportSet out;
    transfer_sweep(out, cfg, false);
    return out;
}

ReportSet run_scaling_experiment(const ExperimentConfig& cfg) {
    if (cfg.lambda_list.size() < 3)
        throw std::invalid_argument("scaling experiment needs at least 3 lambda values");
    ReportSet out;
    const TransportSplit base = make_gaussian_split(SplitVariant::S0Generic);
    const int n = cfg.quick ? 24 : cfg.grid_n;
    const double p = cfg.p, q = derived_q(p);

    std::vector<double> va, vb, vc, vd;
    for (double lam : cfg.lambda_list) {
        const ScaledMember m = make_scaled(base, lam, n);
        va.push_back(lp_norm(frac_dx_spectral(sample(m.f, m.grid), 1.0 / 3.0), p));
        vb.push_back(lp_norm(sample(m.vgrad, m.grid), p));
        vc.push_back(lp_norm(sample(m.S0, m.grid), p));
        vd.push_back(lp_norm(sample(m.S1, m.grid), q));
    }
    const std::vector<double> ll = log_view(cfg.lambda_list);
    const double dp = (kDimD + 1.0) / p, dq = (kDimD + 1.0) / q;
    struct Row {
        const char* name;
        const std::vector<double>* vals;
        double target;
    } rows[] = {
        {"scaling/frac_norm", &va, 1.0 / 3.0 - dp},
        {"scaling/vgrad_norm", &vb, -dp},
        {"scaling/s0_norm", &vc, 1.0 - dp},
        {"scaling/s1_norm", &vd, 1.0 - dq},
    };
    for (const Row& r : rows)
        out.add(make_report(r.name, "p=" + num(p) + ",lambda=" + num(cfg.lambda_list.front()) +
                                ".." + num(cfg.lambda_list.back()),
                            fit_slope(ll, log_view(*r.vals)), r.target, 0.02,
                            "log-log slope across the rescaled family"));
    return out;
}

ReportSet run_balance_suite(int n_random) {
    ReportSet out;
    out.add(make_report("balance/derived_q", "p=2", derived_q(2.0), 1.5, 1e-15,
                        "1/q = 1/p + 1/Q"));
    out.add(make_report("balance/sigma", "d=1", sigma_exponent(), 1.0 / 3.0, 1e-15,
                        "sigma_d = 2/3 - (d+1)/Q"));
    out.add(make_report("balance/d_branch_exponent", "d=1",
                        sigma_exponent() / (sigma_exponent() + 1.0 / 3.0), 0.5, 1e-15,
                        "both factors carry exponent 1/2 in d = 1"));

    {
        const BalanceResult r = balance_lambda({0.0, 0.0, 3.0, 5.0});
        out.add(make_report("balance/degenerate_b", "B=0", r.bound, 0.0, 0.0,
                            "bound collapses as lambda -> 0"));
    }
    {
        const BalanceResult r = balance_lambda({0.0, 4.0, 0.0, 0.0});
        out.add(make_report("balance/degenerate_cd", "C=D=0", r.bound, 0.0, 0.0,
                            "bound collapses as lambda -> infinity"));
    }
    {
        const BalanceResult r = balance_lambda({0.0, 3.0, 5.0, 0.0});
        const double target = 2.0 * std::pow(3.0, 2.0 / 3.0) * std::pow(5.0, 1.0 / 3.0);
        out.add(make_report("balance/closed_d0", "B=3,C=5,D=0", r.bound, target, 1e-12,
                            "branch " + r.branch + ": 2 B^{2/3} C^{1/3}"));
        out.add(make_report("balance/branch_d0", "B=3,C=5,D=0",
                            r.branch == "lambda0" ? 1.0 : 0.0, 1.0, 0.0));
    }
    {
        const BalanceResult r = balance_lambda({0.0, 7.0, 0.0, 2.0});
        out.add(make_report("balance/closed_c0", "B=7,C=0,D=2", r.bound,
                            2.0 * std::sqrt(14.0), 1e-12,
                            "branch " + r.branch + ": 2 (B D)^{1/2}"));
        out.add(make_report("balance/branch_c0", "B=7,C=0,D=2",
                            r.branch == "lambda1" ? 1.0 : 0.0, 1.0, 0.0));
    }

    auto rng = make_rng(809);
    std::uniform_real_distribution<double> ue(std::log(1e-2), std::log(1e2));
    const std::vector<double> grid = log_grid(1e-4, 1e4, 1000);
    const double sigma = sigma_exponent();
    double worst_ratio = 0.0, worst_dominance = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_random; ++i) {
        CorollaryInputs in;
        in.B = std::exp(ue(rng));
        in.C = std::exp(ue(rng));
        in.D = std::exp(ue(rng));
        auto obj = [&](double lam) {
            return in.B * std::pow(lam, -1.0 / 3.0) + in.C * std::pow(lam, 2.0 / 3.0) +
                   in.D * std::pow(lam, sigma);
        };
        const BalanceResult r = balance_lambda(in);
        double brute = std::numeric_limits<double>::infinity();
        for (double lam : grid) brute = std::min(brute, obj(lam));
        worst_ratio = std::max(worst_ratio, r.bound / brute);
        const double other =
            r.branch == "lambda0" ? std::pow(in.B / in.D, 1.0 / (sigma + 1.0 / 3.0))
                                  : in.B / in.C;
        worst_dominance =
            std::max(worst_dominance, (r.bound - obj(other)) / std::max(r.bound, 1e-300));
    }
    const std::string params = "draws=" + std::to_string(n_random);
    out.add(make_bound_report("balance/factor", params, worst_ratio, 3.0,
                              "closed-form pick within factor 3 of a brute-force scan"));
    out.add(make_bound_report("balance/branch_dominance", params, worst_dominance, 1e-9,
                              "chosen branch is weakly better than the alternative"));
    return out;
}

ReportSet run_all(const ExperimentConfig& cfg) {
    ReportSet out;
    out.merge(verify_group_suite(cfg.quick));
    out.merge(verify_trajectory_suite(cfg.quick));
    out.merge(verify_kernel_suite(cfg.quick));
    const double tau = cfg.tau_list.empty() ? 1.0 : cfg.tau_list.front();
    out.merge(verify_defect_suite(cfg.quick ? 16 : cfg.grid_n, tau, cfg.quick, !cfg.quick));
    out.merge(run_lp_suite(cfg.quick));
    out.merge(run_commute_suite(cfg.quick));
    out.merge(run_step5_suite(cfg.quick));
    out.merge(run_besov_experiment(cfg));
    out.merge(run_sobolev_experiment(cfg));
    out.merge(run_scaling_experiment(cfg));
    out.merge(run_balance_suite(cfg.quick ? 50 : 100));
    return out;
}

}  // namespace kinv
