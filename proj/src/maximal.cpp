#include "kinverify/maximal.hpp"

#include <cmath>
#include <stdexcept>

#include "kinverify/convolve.hpp"
#include "kinverify/quadrature.hpp"

namespace kinv {

namespace {

double ball_average(const AnalyticField& f, const PhasePoint& z, double r,
                    const GLRule& unit) {
    // Average of |f(z o m)| over the box |s| < r^2, |y| < r^3, |w| < r,
    // whose measure is exactly kinetic_ball_volume(r); the normalized
    // tensor rule on [-1,1]^3 has total weight 8, so divide by 8.
    const double r2 = r * r;
    const double r3 = r2 * r;
    double acc = 0.0;
    for (std::size_t i = 0; i < unit.x.size(); ++i) {
        const double s = r2 * unit.x[i];
        for (std::size_t j = 0; j < unit.x.size(); ++j) {
            const double y = r3 * unit.x[j];
            double inner = 0.0;
            for (std::size_t k = 0; k < unit.x.size(); ++k) {
                const double w = r * unit.x[k];
                inner += unit.w[k] * std::fabs(f.eval(compose(z, {s, y, w})));
            }
            acc += unit.w[i] * unit.w[j] * inner;
        }
    }
    return acc / 8.0;
}

void check_cfg(const MaximalConfig& cfg) {
    if (cfg.r_grid.empty()) {
        throw std::invalid_argument("MaximalConfig: empty radius grid");
    }
    for (std::size_t i = 1; i < cfg.r_grid.size(); ++i) {
        if (cfg.r_grid[i] <= cfg.r_grid[i - 1]) {
            throw std::invalid_argument("MaximalConfig: radii must increase");
        }
    }
}

// One axis-aligned slab of a dyadic shell: the coordinate `axis` runs over
// +-(lo, hi], the earlier axes are confined to the inner box, the later
// ones run over the full outer box.
struct Slab {
    double s_lo, s_hi, y_lo, y_hi, w_lo, w_hi;  // half-extents per axis
    int split_axis;                             // which axis carries the gap
};

}  // namespace

MaximalConfig default_maximal_config() {
    MaximalConfig cfg;
    const int per_octave = 8;
    const int octaves = 8;  // 2^-4 .. 2^4
    for (int i = 0; i <= per_octave * octaves; ++i) {
        cfg.r_grid.push_back(
            std::pow(2.0, -4.0 + static_cast<double>(i) /
                                     static_cast<double>(per_octave)));
    }
    return cfg;
}

double maximal_x(const AnalyticField& f, const PhasePoint& z,
                 const MaximalConfig& cfg) {
    check_cfg(cfg);
    const GLRule rule = gauss_legendre(std::max(cfg.ball_nodes, 8));
    double best = 0.0;
    for (double r : cfg.r_grid) {
        double acc = 0.0;
        for (std::size_t k = 0; k < rule.x.size(); ++k) {
            acc += rule.w[k] * std::fabs(f.eval({z.t, z.x + r * rule.x[k], z.v}));
        }
        best = std::max(best, acc / 2.0);
    }
    return best;
}

double maximal_kin(const AnalyticField& f, const PhasePoint& z,
                   const MaximalConfig& cfg) {
    check_cfg(cfg);
    const GLRule rule = gauss_legendre(std::max(cfg.ball_nodes, 4));
    double best = 0.0;
    for (double r : cfg.r_grid) {
        best = std::max(best, ball_average(f, z, r, rule));
    }
    return best;
}

double maximal_kin1(const AnalyticField& f, const PhasePoint& z,
                    const MaximalConfig& cfg) {
    check_cfg(cfg);
    const GLRule rule = gauss_legendre(std::max(cfg.ball_nodes, 4));
    double best = 0.0;
    for (double r : cfg.r_grid) {
        best = std::max(best, r * ball_average(f, z, r, rule));
    }
    return best;
}

double fractional_integral_I1(const AnalyticField& f, const PhasePoint& z,
                              const MaximalConfig& cfg) {
    check_cfg(cfg);
    if (cfg.i1_truncation <= 0.0) {
        throw std::invalid_argument("fractional_integral_I1: truncation <= 0");
    }
    const int nodes = std::max(cfg.ball_nodes, 4);
    const GLRule unit = gauss_legendre(nodes);
    const double Qm1 = static_cast<double>(kQ - 1);

    double total = 0.0;
    for (int shell = 0; shell < cfg.i1_shells; ++shell) {
        const double a = cfg.i1_truncation * std::pow(0.5, shell);
        const double b = 0.5 * a;
        // Shell = box(a) \ box(b), decomposed into six slabs: the s-gap
        // slab spans the full (y, w) cross-section of box(a); the y-gap
        // slab keeps |s| <= b^2; the w-gap slab keeps |s| <= b^2 and
        // |y| <= b^3.  Signs of the gap axis give the factor 2.
        const Slab slabs[3] = {
            {b * b, a * a, 0.0, a * a * a, 0.0, a, 0},
            {0.0, b * b, b * b * b, a * a * a, 0.0, a, 1},
            {0.0, b * b, 0.0, b * b * b, b, a, 2},
        };
        for (const Slab& sl : slabs) {
            // Axis ranges: the gap axis integrates over (lo, hi] twice
            // (mirror signs); full axes integrate over [-h, h].
            const GLRule rs = (sl.split_axis == 0)
                                  ? gauss_legendre_on(nodes, sl.s_lo, sl.s_hi)
                                  : gauss_legendre_on(nodes, -sl.s_hi, sl.s_hi);
            const GLRule ry = (sl.split_axis == 1)
                                  ? gauss_legendre_on(nodes, sl.y_lo, sl.y_hi)
                                  : gauss_legendre_on(nodes, -sl.y_hi, sl.y_hi);
            const GLRule rw = (sl.split_axis == 2)
                                  ? gauss_legendre_on(nodes, sl.w_lo, sl.w_hi)
                                  : gauss_legendre_on(nodes, -sl.w_hi, sl.w_hi);
            for (std::size_t i = 0; i < rs.x.size(); ++i) {
                for (std::size_t j = 0; j < ry.x.size(); ++j) {
                    for (std::size_t k = 0; k < rw.x.size(); ++k) {
                        const double wgt = rs.w[i] * ry.w[j] * rw.w[k];
                        for (int sign = 0; sign < 2; ++sign) {
                            PhasePoint m{rs.x[i], ry.x[j], rw.x[k]};
                            if (sign == 1) {
                                if (sl.split_axis == 0) m.t = -m.t;
                                if (sl.split_axis == 1) m.x = -m.x;
                                if (sl.split_axis == 2) m.v = -m.v;
                            }
                            const double rho = rho_box(m);
                            if (rho <= 0.0) continue;
                            total += wgt * std::fabs(f.eval(compose(z, m))) *
                                     std::pow(rho, -Qm1);
                        }
                    }
                }
            }
        }
    }
    // Innermost ball: integral of rho_box^{-(Q-1)} over box(r0) equals
    // 8 (Q-1) ... the layer-cake form d(8 rho^6) * rho^{-5} = 48 rho d rho,
    // so the ball carries mass 48 r0 against a locally constant |f|.
    const double r0 = cfg.i1_truncation * std::pow(0.5, cfg.i1_shells);
    total += 48.0 * r0 * std::fabs(f.eval(z));
    return total;
}

DominationSummary domination_check(const AnalyticField& h,
                                  const std::vector<PhasePoint>& samples,
                                  const std::vector<double>& r_values,
                                  const MaximalConfig& cfg) {
    DominationSummary out;
    if (samples.empty() || r_values.empty()) {
        out.empty_input = true;
        return out;
    }
    check_cfg(cfg);

    std::vector<double> mkin(samples.size());
    std::vector<double> mkin1(samples.size());
    bool any_mass = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        mkin[i] = maximal_kin(h, samples[i], cfg);
        mkin1[i] = maximal_kin1(h, samples[i], cfg);
        if (mkin[i] > 0.0 || mkin1[i] > 0.0) any_mass = true;
    }
    if (!any_mass) {
        out.empty_input = true;  // 0/0 throughout; nothing to dominate
        return out;
    }

    ConvolveOptions plain;
    ConvolveOptions grad;
    grad.grad_y = true;

    const KernelKind kinds[3] = {KernelKind::Vec, KernelKind::VecPi,
                                 KernelKind::Tilde};
    std::vector<double> log_r;
    std::vector<double> log_grad_l1;
    for (double r : r_values) {
        log_r.push_back(std::log(r));
        log_grad_l1.push_back(
            std::log(kernel_grad_y_l1({KernelKind::Vec, r})));
        for (KernelKind kind : kinds) {
            const KernelId kid{kind, r};
            DominationRow row;
            row.kernel = kernel_name(kid);
            row.r = r;
            for (std::size_t i = 0; i < samples.size(); ++i) {
                const double denom =
                    (kind == KernelKind::Tilde) ? mkin1[i] : mkin[i];
                if (denom <= 0.0) continue;
                const double tv =
                    std::fabs(kinetic_convolve_at(kid, h, samples[i], plain));
                const double gv =
                    std::fabs(kinetic_convolve_at(kid, h, samples[i], grad));
                row.ratio_plain = std::max(row.ratio_plain, tv / denom);
                row.ratio_grad =
                    std::max(row.ratio_grad, r * r * r * gv / denom);
            }
            out.c_plain = std::max(out.c_plain, row.ratio_plain);
            out.c_grad = std::max(out.c_grad, row.ratio_grad);
            out.rows.push_back(row);
        }
    }
    out.grad_l1_slope = fit_slope(log_r, log_grad_l1);
    return out;
}

}  // namespace kinv
