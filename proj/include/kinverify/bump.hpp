#pragma once

// The bump psi on trajectory-parameter space: a normalized product of the
// standard smooth compactly supported profile P(u) = exp(-1/(1-u^2)), with
// the time factor recentered by a -> 2a+3 so that supp psi is
// (-2,-1) x (-1,1) x (-1,1) and the total mass is 1.
//
// The normalization Z is fixed once by quadrature (Z = I_P^3 / 2 where I_P is
// the profile's integral); every measured kernel constant in this project
// depends on this choice of psi, so reports record it.

namespace kinv {

// P(u) on |u| < 1, zero elsewhere; derivatives likewise.
double bump_profile(double u);
double bump_profile_d1(double u);
double bump_profile_d2(double u);

// Integral of the profile over (-1,1), computed once by Gauss-Legendre.
double bump_profile_integral();

struct BumpSpec {
    double Z;  // normalization: psi = P(2a+3) P(b1) P(b2) / Z
};
const BumpSpec& bump_spec();

double bump_eval(double a, double b1, double b2);

struct BumpGrad {
    double db1 = 0.0, db2 = 0.0;
};
BumpGrad bump_grad(double a, double b1, double b2);

// Second partials in (b1, b2), needed for the y-derivative of the kernel that
// already carries one psi-gradient.
struct BumpHess {
    double d11 = 0.0, d12 = 0.0, d22 = 0.0;
};
BumpHess bump_hess(double a, double b1, double b2);

// One-line description for report notes.
const char* bump_describe();

}  // namespace kinv
