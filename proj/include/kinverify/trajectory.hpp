#pragma once

// The critical kinetic trajectory family gamma^m and its matrix ingredients.
//
// The two forcings are g1(r) = r^3 sin log r, g2(r) = r^3 cos log r; dividing
// their r-derivatives by 2r gives h1, h2, and differentiating once more gives
// the bounded oscillatory entries f1, f2 of the forcing matrix.  The endpoint
// map
//     gamma^m(r; (t,x,v)) = (t + m0 r^2, E_{m0}(r)(x,v) + A_{m0}(r)(m1,m2))
// is degree-correct under kinetic dilations: the A-blocks scale like r^3 in
// the position row and r in the velocity row, and the per-block determinant
// is exactly -r^4/2 for every m0.

#include "kinverify/phase.hpp"

namespace kinv {

struct TrajectoryParams {
    double m0 = -1.0;  // must be nonzero
    double m1 = 0.0;
    double m2 = 0.0;
};

struct ForcingValues {
    double g1 = 0.0, g2 = 0.0;
    double h1 = 0.0, h2 = 0.0;
    double f1 = 0.0, f2 = 0.0;
    bool f_defined = true;  // false at r = 0, where f1, f2 have no limit
};

// 2x2 block matrix with scalar blocks (d = 1).
struct Block2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;
};

ForcingValues forcing(double r);

Block2 mat_W(double r);
Block2 mat_D(double delta);
Block2 mat_E(double delta, double r);
Block2 mat_A(double m0, double r);
Block2 mat_A_inv(double m0, double r);

// Per-block determinant of A_{m0}(r); equals -r^4/2 identically.
double mat_A_det(double m0, double r);

// Forcing row [f1/m0, f2]; gamma_dot_v = F . (m1, m2).
struct ForcingRow {
    double c1 = 0.0, c2 = 0.0;
};
ForcingRow mat_F(double m0, double r);

PhasePoint endpoint(const TrajectoryParams& m, double r, const PhasePoint& z);

// Recover m from the endpoint offset (s, y, w) = gamma^m(r; 0) at scale r:
// m0 = s / r^2 and (m1, m2) = A_{m0}(r)^{-1} (y, w).
TrajectoryParams endpoint_inverse_params(double r, const PhasePoint& offset);

// d/dr of the velocity component, exact: F_{m0}(r) . (m1, m2).
double gamma_dot_v(const TrajectoryParams& m, double r);

// Central-difference check of the trajectory property gamma_dot_x =
// gamma_dot_t * gamma_v, plus the exact gamma_dot_t = 2 m0 r.
struct M1Result {
    double residual = 0.0;          // |gamma_dot_x - gamma_dot_t * gamma_v| at step dr
    double residual_half = 0.0;     // same at dr/2
    double gamma_dot_t_error = 0.0; // |finite difference - 2 m0 r|
};
M1Result verify_M1(const TrajectoryParams& m, double r, double dr,
                   const PhasePoint& z);

// The three deviation quantities of the endpoint bounds and their reference
// envelopes: |gamma_dot_v| vs |m1|/|m0| + |m2|, |gamma_v - v|/r vs the same,
// |gamma_x - x - m0 v r^2|/r^3 vs |m1| + |m0||m2|.
struct M4Result {
    double dot_v = 0.0, dev_v = 0.0, dev_x = 0.0;
    double envelope_v = 0.0, envelope_x = 0.0;
};
M4Result verify_M4(const TrajectoryParams& m, double r, const PhasePoint& z);

}  // namespace kinv
