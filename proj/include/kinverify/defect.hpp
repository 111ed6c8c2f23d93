#pragma once

// Kinetic mollification, the trajectory-average identity, and the exact
// representation of the mollification defect
//   f - T_{K_tau} f
//     = int_0^tau [ T_{Kvecpi_r} S0 + T_{Ktilde_r} S1 + T_{Kvec_r} d_v f ] dr
// for transport splittings (d_t + v d_x) f = d_v S0 + S1.
//
// Everything runs in trajectory coordinates m = (m0, m1, m2): the kernels
// reduce there to closed-form weights against the bump, and the trajectory
// endpoint supplies the group action.  For the built-in Gaussian family the
// engine also carries a separable (poly * Gaussian per axis) form of each
// field, which lets the same quadrature sum be reordered so that axis
// factors are shared across the whole evaluation grid.

#include <string>
#include <vector>

#include "kinverify/field.hpp"
#include "kinverify/phase.hpp"

namespace kinv {

// Analytic evaluator plus an optional separable form; when the separable
// terms are present they must describe the same function (unit-tested).
// `zero` marks channels that vanish identically so the engine can skip them.
struct FieldPair {
    AnalyticField analytic;
    SeparableField separable;
    bool zero = false;
    bool has_fast() const { return !separable.empty(); }
};

struct TransportSplit {
    std::string name;
    FieldPair f;
    FieldPair S0;        // d = 1: scalar channel
    FieldPair S1;
    FieldPair div_v_S0;  // closed-form d_v S0
    FieldPair vgrad_f;   // closed-form d_v f
};

enum class SplitVariant { S0Zero, S0Generic };
TransportSplit make_gaussian_split(SplitVariant variant);

// |(d_t + v d_x) f - d_v S0 - S1| at z, all terms closed-form.
double split_residual(const TransportSplit& split, const PhasePoint& z);

// int f(endpoint(m, tau, z)) psi(m) dm by tensor Gauss-Legendre over the
// m-box [-2,-1] x [-1,1]^2.  Defaults give ~1e-8 relative accuracy on the
// Gaussian family; they deliberately differ from the convolution path's
// node counts so agreement checks compare distinct quadratures.
double trajectory_average(const AnalyticField& f, double tau,
                          const PhasePoint& z, int outer_nodes = 28,
                          int inner_nodes = 36);

// Composite r-quadrature on (0, tau]: `levels` dyadic panels below tau/4
// with inner_pts Gauss-Legendre nodes each (the innermost panel reaches
// down to 0, so the weights sum to tau exactly while all nodes stay
// positive), then outer_panels uniform panels on [tau/4, tau] with
// outer_pts nodes each.
struct RSchedule {
    std::vector<double> r;
    std::vector<double> w;
};
RSchedule make_r_schedule(double tau, int levels = 8, int inner_pts = 2,
                          int outer_panels = 3, int outer_pts = 4);

struct EngineOptions {
    int outer_nodes = 32;  // m0 axis
    int inner_nodes = 32;  // m1, m2 axes
    int r_levels = 8;
    int r_inner_pts = 2;
    int r_outer_panels = 3;
    int r_outer_pts = 4;
};
EngineOptions refined_engine_options();  // doubled r-nodes and m-resolution
EngineOptions quick_engine_options();    // coarse single-pass settings

// T_{K_tau} f on the grid.  Uses the separable fast path when `sep` is
// nonempty, otherwise pointwise trajectory averages.
GridField mollify(const AnalyticField& f, double tau, const GridSpec& grid,
                  const EngineOptions& opt = {},
                  const SeparableField& sep = {});

// f - T_{K_tau} f on the grid.
GridField defect_direct(const TransportSplit& split, double tau,
                        const GridSpec& grid, const EngineOptions& opt = {});

// The r-integral of the three kernel channels on the grid.
GridField defect_via_representation(const TransportSplit& split, double tau,
                                    const GridSpec& grid,
                                    const EngineOptions& opt = {});

// Same value at a single point through the chart-parametrized kinetic
// convolution (slow reference; exercises the (s, y, w) kernel forms).
double representation_at(const TransportSplit& split, double tau,
                         const PhasePoint& z, int conv_nodes = 32,
                         const RSchedule* schedule = nullptr);

// ||Delta_x^h T_{K_tau} f||_2 <= C min(1, |h| tau^-3) ||f||_2 probe: returns
// the measured constant over the given h values at one tau.
double besov_tail_constant(const TransportSplit& split, double tau,
                           const std::vector<double>& h_values,
                           const GridSpec& grid, const EngineOptions& opt = {});

}  // namespace kinv
