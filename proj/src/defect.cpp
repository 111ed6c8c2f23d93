#include "kinverify/defect.hpp"

#include <cmath>
#include <stdexcept>

#include "kinverify/bump.hpp"
#include "kinverify/convolve.hpp"
#include "kinverify/kernels.hpp"
#include "kinverify/quadrature.hpp"
#include "kinverify/trajectory.hpp"

namespace kinv {

namespace {

double unit_gauss(double u) { return std::exp(-0.5 * u * u); }

AnalyticField zero_field() {
    AnalyticField f;
    f.eval = [](const PhasePoint&) { return 0.0; };
    f.transport = f.eval;
    f.vgrad = f.eval;
    return f;
}

bool field_is_zero(const FieldPair& fp) {
    return fp.zero || (fp.separable.terms.empty() && !fp.analytic.eval);
}

enum class ChannelKind { Mollify, Pi, Tilde, Vec };

struct Channel {
    ChannelKind kind;
    const FieldPair* field;
    int out_index;
};

KernelKind to_kernel_kind(ChannelKind c) {
    switch (c) {
        case ChannelKind::Mollify: return KernelKind::Mollifier;
        case ChannelKind::Pi: return KernelKind::VecPi;
        case ChannelKind::Tilde: return KernelKind::Tilde;
        case ChannelKind::Vec: return KernelKind::Vec;
    }
    return KernelKind::Mollifier;
}

// m-space weight of one channel at scale r: the chart kernels times the
// change-of-variables factor r^6/2 collapse to these closed forms.
struct NodeWeights {
    double mollify, pi, tilde, vec;
};

// Fast path: every field separable.  The quadrature sum over
// (r, m0, m1, m2) x grid is reordered so the t-axis factor is pulled out of
// the inner loops; the value is identical to the pointwise sum.
void engine_separable(const RSchedule& sched, const std::vector<Channel>& chans,
                      const GridSpec& grid, const EngineOptions& opt,
                      std::vector<GridField*>& outs) {
    struct TermRef {
        const SepTerm* term;
        int chan;
    };
    std::vector<TermRef> terms;
    for (std::size_t c = 0; c < chans.size(); ++c) {
        for (const SepTerm& t : chans[c].field->separable.terms) {
            terms.push_back({&t, static_cast<int>(c)});
        }
    }
    if (terms.empty()) return;
    const int nterm = static_cast<int>(terms.size());

    const GLRule ro = gauss_legendre_on(opt.outer_nodes, -2.0, -1.0);
    const GLRule ri = gauss_legendre(opt.inner_nodes);
    const double Z = bump_spec().Z;

    const int nt = grid.nt, nx = grid.nx, nv = grid.nv;
    const std::size_t plane = static_cast<std::size_t>(nx) * nv;
    std::vector<double> tt_buf(static_cast<std::size_t>(nterm) * nt);
    std::vector<double> km(static_cast<std::size_t>(nterm) * plane);
    std::vector<double> cf(static_cast<std::size_t>(nterm));
    std::vector<double> chw(static_cast<std::size_t>(nterm));

    std::vector<double> tv(static_cast<std::size_t>(nt));
    std::vector<double> xv(static_cast<std::size_t>(nx));
    std::vector<double> vv(static_cast<std::size_t>(nv));
    for (int i = 0; i < nt; ++i) tv[static_cast<std::size_t>(i)] = grid.t_at(i);
    for (int j = 0; j < nx; ++j) xv[static_cast<std::size_t>(j)] = grid.x_at(j);
    for (int l = 0; l < nv; ++l) vv[static_cast<std::size_t>(l)] = grid.v_at(l);

    for (std::size_t ir = 0; ir < sched.r.size(); ++ir) {
        const double r = sched.r[ir];
        const double wr = sched.w[ir];
        const ForcingValues fo = forcing(r);
        for (int io = 0; io < opt.outer_nodes; ++io) {
            const double m0 = ro.x[static_cast<std::size_t>(io)];
            const double w0 = ro.w[static_cast<std::size_t>(io)];
            const double st = m0 * r * r;
            const Block2 A = mat_A(m0, r);
            const Block2 Ainv = mat_A_inv(m0, r);
            const double p0 = bump_profile(2.0 * m0 + 3.0);
            if (p0 == 0.0) continue;

            for (int i = 0; i < nt; ++i) {
                const double targ = tv[static_cast<std::size_t>(i)] + st;
                const double gt = unit_gauss(targ);
                for (int m = 0; m < nterm; ++m) {
                    tt_buf[static_cast<std::size_t>(m) * nt + i] =
                        poly_eval(terms[static_cast<std::size_t>(m)].term->pt,
                                  targ) *
                        gt;
                }
            }
            std::fill(km.begin(), km.end(), 0.0);

            for (int q1 = 0; q1 < opt.inner_nodes; ++q1) {
                const double m1 = ri.x[static_cast<std::size_t>(q1)];
                const double w1 = ri.w[static_cast<std::size_t>(q1)];
                const double P1 = bump_profile(m1);
                const double P1d = bump_profile_d1(m1);
                for (int q2 = 0; q2 < opt.inner_nodes; ++q2) {
                    const double m2 = ri.x[static_cast<std::size_t>(q2)];
                    const double w2 = ri.w[static_cast<std::size_t>(q2)];
                    const double P2 = bump_profile(m2);
                    const double P2d = bump_profile_d1(m2);

                    const double yb = A.a11 * m1 + A.a12 * m2;
                    const double wb = A.a21 * m1 + A.a22 * m2;
                    const double base = wr * w0 * w1 * w2;
                    const double psi = p0 * P1 * P2 / Z;

                    NodeWeights nw;
                    nw.mollify = psi * base;
                    nw.tilde = -2.0 * m0 * r * psi * base;
                    nw.vec = -((fo.f1 / m0) * m1 + fo.f2 * m2) * psi * base;
                    nw.pi = 2.0 * m0 * r * (p0 / Z) *
                            (P1d * P2 * Ainv.a12 + P1 * P2d * Ainv.a22) * base;
                    for (int m = 0; m < nterm; ++m) {
                        const Channel& ch = chans[static_cast<std::size_t>(
                            terms[static_cast<std::size_t>(m)].chan)];
                        double cw = 0.0;
                        switch (ch.kind) {
                            case ChannelKind::Mollify: cw = nw.mollify; break;
                            case ChannelKind::Pi: cw = nw.pi; break;
                            case ChannelKind::Tilde: cw = nw.tilde; break;
                            case ChannelKind::Vec: cw = nw.vec; break;
                        }
                        chw[static_cast<std::size_t>(m)] = cw;
                    }

                    for (int l = 0; l < nv; ++l) {
                        const double varg = vv[static_cast<std::size_t>(l)] + wb;
                        const double gv = unit_gauss(varg);
                        for (int m = 0; m < nterm; ++m) {
                            cf[static_cast<std::size_t>(m)] =
                                chw[static_cast<std::size_t>(m)] *
                                poly_eval(
                                    terms[static_cast<std::size_t>(m)].term->pv,
                                    varg) *
                                gv;
                        }
                        const double shift =
                            st * vv[static_cast<std::size_t>(l)] + yb;
                        for (int j = 0; j < nx; ++j) {
                            const double xarg =
                                xv[static_cast<std::size_t>(j)] + shift;
                            const double gx = unit_gauss(xarg);
                            const std::size_t jl =
                                static_cast<std::size_t>(j) * nv + l;
                            for (int m = 0; m < nterm; ++m) {
                                km[static_cast<std::size_t>(m) * plane + jl] +=
                                    cf[static_cast<std::size_t>(m)] *
                                    poly_eval(terms[static_cast<std::size_t>(m)]
                                                  .term->px,
                                              xarg) *
                                    gx;
                            }
                        }
                    }
                }
            }

            for (int i = 0; i < nt; ++i) {
                for (int m = 0; m < nterm; ++m) {
                    const double a =
                        tt_buf[static_cast<std::size_t>(m) * nt + i];
                    if (a == 0.0) continue;
                    double* dst =
                        outs[static_cast<std::size_t>(
                                 chans[static_cast<std::size_t>(
                                           terms[static_cast<std::size_t>(m)]
                                               .chan)]
                                     .out_index)]
                            ->samples.data() +
                        static_cast<std::size_t>(i) * plane;
                    const double* src =
                        km.data() + static_cast<std::size_t>(m) * plane;
                    for (std::size_t jl = 0; jl < plane; ++jl) {
                        dst[jl] += a * src[jl];
                    }
                }
            }
        }
    }
}

// Slow path: pointwise m-space quadrature for channels without a separable
// form.  Same weights, same nodes, no reordering.
double engine_at_point(const RSchedule& sched, ChannelKind kind,
                       const AnalyticField& field, const PhasePoint& z,
                       const EngineOptions& opt) {
    const GLRule ro = gauss_legendre_on(opt.outer_nodes, -2.0, -1.0);
    const GLRule ri = gauss_legendre(opt.inner_nodes);
    const double Z = bump_spec().Z;
    std::vector<double> pieces;
    pieces.reserve(sched.r.size() * static_cast<std::size_t>(opt.outer_nodes));
    for (std::size_t ir = 0; ir < sched.r.size(); ++ir) {
        const double r = sched.r[ir];
        const double wr = sched.w[ir];
        const ForcingValues fo = forcing(r);
        for (int io = 0; io < opt.outer_nodes; ++io) {
            const double m0 = ro.x[static_cast<std::size_t>(io)];
            const double w0 = ro.w[static_cast<std::size_t>(io)];
            const double st = m0 * r * r;
            const Block2 A = mat_A(m0, r);
            const Block2 Ainv = mat_A_inv(m0, r);
            const double p0 = bump_profile(2.0 * m0 + 3.0);
            if (p0 == 0.0) continue;
            double acc = 0.0;
            for (int q1 = 0; q1 < opt.inner_nodes; ++q1) {
                const double m1 = ri.x[static_cast<std::size_t>(q1)];
                const double w1 = ri.w[static_cast<std::size_t>(q1)];
                const double P1 = bump_profile(m1);
                const double P1d = bump_profile_d1(m1);
                for (int q2 = 0; q2 < opt.inner_nodes; ++q2) {
                    const double m2 = ri.x[static_cast<std::size_t>(q2)];
                    const double w2 = ri.w[static_cast<std::size_t>(q2)];
                    const double P2 = bump_profile(m2);
                    const double P2d = bump_profile_d1(m2);
                    const double psi = p0 * P1 * P2 / Z;
                    double cw = 0.0;
                    switch (kind) {
                        case ChannelKind::Mollify: cw = psi; break;
                        case ChannelKind::Tilde: cw = -2.0 * m0 * r * psi; break;
                        case ChannelKind::Vec:
                            cw = -((fo.f1 / m0) * m1 + fo.f2 * m2) * psi;
                            break;
                        case ChannelKind::Pi:
                            cw = 2.0 * m0 * r * (p0 / Z) *
                                 (P1d * P2 * Ainv.a12 + P1 * P2d * Ainv.a22);
                            break;
                    }
                    if (cw == 0.0) continue;
                    const double yb = A.a11 * m1 + A.a12 * m2;
                    const double wb = A.a21 * m1 + A.a22 * m2;
                    const PhasePoint arg{z.t + st, z.x + st * z.v + yb,
                                         z.v + wb};
                    acc += w1 * w2 * cw * field.eval(arg);
                }
            }
            pieces.push_back(wr * w0 * acc);
        }
    }
    return pairwise_sum(pieces);
}

void run_engine(const RSchedule& sched, const std::vector<Channel>& chans,
                const GridSpec& grid, const EngineOptions& opt,
                std::vector<GridField*>& outs) {
    std::vector<Channel> fast;
    std::vector<Channel> slow;
    for (const Channel& c : chans) {
        if (c.field->has_fast()) {
            fast.push_back(c);
        } else {
            slow.push_back(c);
        }
    }
    if (!fast.empty()) engine_separable(sched, fast, grid, opt, outs);
    for (const Channel& c : slow) {
        GridField* out = outs[static_cast<std::size_t>(c.out_index)];
        for (int i = 0; i < grid.nt; ++i) {
            for (int j = 0; j < grid.nx; ++j) {
                for (int l = 0; l < grid.nv; ++l) {
                    const PhasePoint z{grid.t_at(i), grid.x_at(j),
                                       grid.v_at(l)};
                    out->samples[grid.index(i, j, l)] +=
                        engine_at_point(sched, c.kind, c.field->analytic, z,
                                        opt);
                }
            }
        }
    }
}

}  // namespace

TransportSplit make_gaussian_split(SplitVariant variant) {
    TransportSplit sp;
    const auto G3 = [](const PhasePoint& z) {
        return std::exp(-0.5 * (z.t * z.t + z.x * z.x + z.v * z.v));
    };

    sp.f.analytic.eval = G3;
    sp.f.analytic.transport = [G3](const PhasePoint& z) {
        return -(z.t + z.v * z.x) * G3(z);
    };
    sp.f.analytic.vgrad = [G3](const PhasePoint& z) { return -z.v * G3(z); };
    sp.f.separable.terms = {SepTerm{}};

    sp.vgrad_f.analytic.eval = sp.f.analytic.vgrad;
    sp.vgrad_f.separable.terms = {SepTerm{{1.0}, {1.0}, {0.0, -1.0}}};

    if (variant == SplitVariant::S0Zero) {
        sp.name = "gaussian-s0zero";
        sp.S0.analytic = zero_field();
        sp.S0.separable.terms.clear();
        sp.S0.zero = true;
        sp.div_v_S0.analytic = zero_field();
        sp.div_v_S0.separable.terms.clear();
        sp.div_v_S0.zero = true;
        // S1 = -(t + vx) f
        sp.S1.analytic.eval = sp.f.analytic.transport;
        sp.S1.separable.terms = {SepTerm{{0.0, -1.0}, {1.0}, {1.0}},
                                 SepTerm{{1.0}, {0.0, -1.0}, {0.0, 1.0}}};
    } else {
        sp.name = "gaussian-s0generic";
        // S0 = -xv f
        sp.S0.analytic.eval = [G3](const PhasePoint& z) {
            return -z.x * z.v * G3(z);
        };
        sp.S0.separable.terms = {SepTerm{{1.0}, {0.0, -1.0}, {0.0, 1.0}}};
        // d_v S0 = -x f + x v^2 f
        sp.div_v_S0.analytic.eval = [G3](const PhasePoint& z) {
            return (-z.x + z.x * z.v * z.v) * G3(z);
        };
        sp.div_v_S0.separable.terms = {
            SepTerm{{1.0}, {0.0, -1.0}, {1.0}},
            SepTerm{{1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0}}};
        // S1 = transport - d_v S0 = -(t + vx) f + x f - x v^2 f
        sp.S1.analytic.eval = [G3](const PhasePoint& z) {
            return (-(z.t + z.v * z.x) + z.x - z.x * z.v * z.v) * G3(z);
        };
        sp.S1.separable.terms = {
            SepTerm{{0.0, -1.0}, {1.0}, {1.0}},
            SepTerm{{1.0}, {0.0, -1.0}, {0.0, 1.0}},
            SepTerm{{1.0}, {0.0, 1.0}, {1.0}},
            SepTerm{{1.0}, {0.0, 1.0}, {0.0, 0.0, -1.0}}};
    }
    return sp;
}

double split_residual(const TransportSplit& split, const PhasePoint& z) {
    const double lhs = split.f.analytic.transport(z);
    const double s0 =
        field_is_zero(split.div_v_S0) ? 0.0 : split.div_v_S0.analytic.eval(z);
    const double s1 = split.S1.analytic.eval(z);
    return std::fabs(lhs - s0 - s1);
}

double trajectory_average(const AnalyticField& f, double tau,
                          const PhasePoint& z, int outer_nodes,
                          int inner_nodes) {
    if (tau <= 0.0) throw std::invalid_argument("trajectory_average: tau <= 0");
    const GLRule ro = gauss_legendre_on(outer_nodes, -2.0, -1.0);
    const GLRule ri = gauss_legendre(inner_nodes);
    std::vector<double> pieces;
    pieces.reserve(static_cast<std::size_t>(outer_nodes));
    for (int io = 0; io < outer_nodes; ++io) {
        const double m0 = ro.x[static_cast<std::size_t>(io)];
        double acc = 0.0;
        for (int q1 = 0; q1 < inner_nodes; ++q1) {
            for (int q2 = 0; q2 < inner_nodes; ++q2) {
                const double m1 = ri.x[static_cast<std::size_t>(q1)];
                const double m2 = ri.x[static_cast<std::size_t>(q2)];
                const double psi = bump_eval(m0, m1, m2);
                if (psi == 0.0) continue;
                const PhasePoint p =
                    endpoint(TrajectoryParams{m0, m1, m2}, tau, z);
                acc += ri.w[static_cast<std::size_t>(q1)] *
                       ri.w[static_cast<std::size_t>(q2)] * psi * f.eval(p);
            }
        }
        pieces.push_back(ro.w[static_cast<std::size_t>(io)] * acc);
    }
    return pairwise_sum(pieces);
}

RSchedule make_r_schedule(double tau, int levels, int inner_pts,
                          int outer_panels, int outer_pts) {
    if (tau <= 0.0) throw std::invalid_argument("make_r_schedule: tau <= 0");
    if (levels < 1 || inner_pts < 1 || outer_panels < 1 || outer_pts < 1) {
        throw std::invalid_argument("make_r_schedule: bad panel counts");
    }
    RSchedule out;
    const double split = 0.25 * tau;
    for (int j = levels - 1; j >= 0; --j) {
        const double hi = split * std::pow(0.5, j);
        // the innermost panel stretches down to 0 so the weights sum to tau
        // exactly; Gauss-Legendre nodes are interior, so every r stays > 0
        const double lo = (j == levels - 1) ? 0.0 : 0.5 * hi;
        const GLRule rule = gauss_legendre_on(inner_pts, lo, hi);
        out.r.insert(out.r.end(), rule.x.begin(), rule.x.end());
        out.w.insert(out.w.end(), rule.w.begin(), rule.w.end());
    }
    const double width = (tau - split) / outer_panels;
    for (int k = 0; k < outer_panels; ++k) {
        const GLRule rule = gauss_legendre_on(outer_pts, split + k * width,
                                              split + (k + 1) * width);
        out.r.insert(out.r.end(), rule.x.begin(), rule.x.end());
        out.w.insert(out.w.end(), rule.w.begin(), rule.w.end());
    }
    return out;
}

EngineOptions refined_engine_options() {
    EngineOptions opt;
    opt.outer_nodes = 48;
    opt.inner_nodes = 48;
    opt.r_levels = 10;
    opt.r_inner_pts = 4;
    opt.r_outer_panels = 6;
    opt.r_outer_pts = 4;
    return opt;
}

EngineOptions quick_engine_options() {
    EngineOptions opt;
    opt.outer_nodes = 16;
    opt.inner_nodes = 16;
    opt.r_levels = 6;
    opt.r_inner_pts = 2;
    opt.r_outer_panels = 2;
    opt.r_outer_pts = 4;
    return opt;
}

GridField mollify(const AnalyticField& f, double tau, const GridSpec& grid,
                  const EngineOptions& opt, const SeparableField& sep) {
    if (tau <= 0.0) throw std::invalid_argument("mollify: tau <= 0");
    GridField out(grid);
    RSchedule single;
    single.r = {tau};
    single.w = {1.0};
    FieldPair fp;
    fp.analytic = f;
    fp.separable = sep;
    std::vector<Channel> chans{{ChannelKind::Mollify, &fp, 0}};
    std::vector<GridField*> outs{&out};
    run_engine(single, chans, grid, opt, outs);
    return out;
}

GridField defect_direct(const TransportSplit& split, double tau,
                        const GridSpec& grid, const EngineOptions& opt) {
    GridField out = sample(split.f.analytic, grid);
    const GridField moll =
        mollify(split.f.analytic, tau, grid, opt, split.f.separable);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        out.samples[i] -= moll.samples[i];
    }
    return out;
}

GridField defect_via_representation(const TransportSplit& split, double tau,
                                    const GridSpec& grid,
                                    const EngineOptions& opt) {
    if (tau <= 0.0) {
        throw std::invalid_argument("defect_via_representation: tau <= 0");
    }
    const RSchedule sched =
        make_r_schedule(tau, opt.r_levels, opt.r_inner_pts, opt.r_outer_panels,
                        opt.r_outer_pts);
    if (sched.r.size() < 16) {
        throw std::invalid_argument(
            "defect_via_representation: need at least 16 r-nodes");
    }
    GridField out(grid);
    std::vector<Channel> chans;
    if (!field_is_zero(split.S0)) {
        chans.push_back({ChannelKind::Pi, &split.S0, 0});
    }
    chans.push_back({ChannelKind::Tilde, &split.S1, 0});
    chans.push_back({ChannelKind::Vec, &split.vgrad_f, 0});
    std::vector<GridField*> outs{&out};
    run_engine(sched, chans, grid, opt, outs);
    return out;
}

double representation_at(const TransportSplit& split, double tau,
                         const PhasePoint& z, int conv_nodes,
                         const RSchedule* schedule) {
    RSchedule fallback;
    if (schedule == nullptr) {
        fallback = make_r_schedule(tau);
        schedule = &fallback;
    }
    ConvolveOptions copt;
    copt.nodes_s = conv_nodes;
    copt.nodes_b = conv_nodes;
    std::vector<double> pieces;
    for (std::size_t ir = 0; ir < schedule->r.size(); ++ir) {
        const double r = schedule->r[ir];
        const double wr = schedule->w[ir];
        double val = 0.0;
        if (!field_is_zero(split.S0)) {
            val += kinetic_convolve_at({KernelKind::VecPi, r},
                                       split.S0.analytic, z, copt);
        }
        val += kinetic_convolve_at({KernelKind::Tilde, r}, split.S1.analytic,
                                   z, copt);
        val += kinetic_convolve_at({KernelKind::Vec, r},
                                   split.vgrad_f.analytic, z, copt);
        pieces.push_back(wr * val);
    }
    return pairwise_sum(pieces);
}

double besov_tail_constant(const TransportSplit& split, double tau,
                           const std::vector<double>& h_values,
                           const GridSpec& grid, const EngineOptions& opt) {
    const GridField moll =
        mollify(split.f.analytic, tau, grid, opt, split.f.separable);
    const double fnorm = lp_norm(sample(split.f.analytic, grid), 2.0);
    double worst = 0.0;
    for (double h : h_values) {
        // snap to the lattice so the grid difference is exact
        const double steps = std::round(h / grid.dx());
        if (steps == 0.0) continue;
        const double hs = steps * grid.dx();
        const GridField diff = delta_x_h(moll, hs);
        const double bound =
            std::min(1.0, std::fabs(hs) / (tau * tau * tau)) * fnorm;
        worst = std::max(worst, lp_norm(diff, 2.0) / bound);
    }
    return worst;
}

}  // namespace kinv
