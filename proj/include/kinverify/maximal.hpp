#pragma once

// Hardy-Littlewood maximal operator in x, kinetic maximal operators over the
// anisotropic balls, the fractional integral I_1, and the pointwise
// domination checks for the kernel family.  The sup over r > 0 is
// discretized to a log-spaced radius grid; ball averages use tensor
// Gauss-Legendre over the box with the exact ball volume.

#include <string>
#include <vector>

#include "kinverify/field.hpp"
#include "kinverify/kernels.hpp"
#include "kinverify/phase.hpp"

namespace kinv {

struct MaximalConfig {
    std::vector<double> r_grid;  // nonempty, increasing
    int ball_nodes = 8;          // per-axis Gauss-Legendre nodes
    double i1_truncation = 1.0;  // rho_box truncation radius for I_1
    int i1_shells = 24;          // dyadic shells down from the truncation
};

// Radii 2^-4 .. 2^4, eight points per octave.
MaximalConfig default_maximal_config();

double maximal_x(const AnalyticField& f, const PhasePoint& z,
                 const MaximalConfig& cfg);
// sup over the radius grid of the ball average of |f|.
double maximal_kin(const AnalyticField& f, const PhasePoint& z,
                   const MaximalConfig& cfg);
// sup of r times the ball average: the scale-weighted variant that
// dominates the Tilde channel, whose mass grows like 3r.  For a constant
// field this is r_max times the constant, not the constant itself.
double maximal_kin1(const AnalyticField& f, const PhasePoint& z,
                    const MaximalConfig& cfg);

// I_1 f(z) = integral of |f(z o m)| rho_box(m)^{-(Q-1)} over rho_box(m) <= R,
// by dyadic shells (six box slabs each) plus an analytic innermost-ball term.
double fractional_integral_I1(const AnalyticField& f, const PhasePoint& z,
                              const MaximalConfig& cfg);

struct DominationRow {
    std::string kernel;
    double r = 0.0;
    double ratio_plain = 0.0;  // sup_z |T_{J_r} h| / M(h)
    double ratio_grad = 0.0;   // sup_z r^3 |T_{d_y J_r} h| / M(h)
};

struct DominationSummary {
    std::vector<DominationRow> rows;
    double c_plain = 0.0;      // sup of ratio_plain over kernels and radii
    double c_grad = 0.0;       // sup of ratio_grad over kernels and radii
    double grad_l1_slope = 0.0;  // slope of log ||d_y Kvec_r||_1 vs log r
    bool empty_input = false;
};

// Vec and VecPi ratios are taken against M_kin, Tilde against M_kin1.
DominationSummary domination_check(const AnalyticField& h,
                                   const std::vector<PhasePoint>& samples,
                                   const std::vector<double>& r_values,
                                   const MaximalConfig& cfg);

}  // namespace kinv
