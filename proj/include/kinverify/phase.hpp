#pragma once

// Kinetic translation group on phase space (t, x, v), specialized to spatial
// dimension d = 1 (x and v are scalars).  The group law makes the transport
// operator d/dt + v d/dx left-invariant; dilations are anisotropic with
// homogeneous dimension Q = 4d + 2.

#include <cmath>
#include <stdexcept>

namespace kinv {

struct Dimension {
    int d = 1;
    int Q() const { return 4 * d + 2; }
};

inline constexpr int kDimD = 1;
inline constexpr int kQ = 6;  // 4*1 + 2

struct PhasePoint {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
};

inline PhasePoint origin() { return {0.0, 0.0, 0.0}; }

// (t,x,v) o (s,y,w) = (t+s, x+y+s v, v+w)
inline PhasePoint compose(const PhasePoint& z, const PhasePoint& zeta) {
    return {z.t + zeta.t, z.x + zeta.x + zeta.t * z.v, z.v + zeta.v};
}

// (t,x,v)^{-1} = (-t, -x + t v, -v)
inline PhasePoint inverse(const PhasePoint& z) {
    return {-z.t, -z.x + z.t * z.v, -z.v};
}

// (t,x,v) -> (r^2 t, r^3 x, r v)
inline PhasePoint dilate(double r, const PhasePoint& z) {
    if (!(r > 0.0)) throw std::invalid_argument("dilate: r must be positive");
    return {r * r * z.t, r * r * r * z.x, r * z.v};
}

// max{ |t|^{1/2}, |x|^{1/3}, |v| }, homogeneous of degree 1 under dilate.
inline double rho_box(const PhasePoint& z) {
    const double a = std::sqrt(std::fabs(z.t));
    const double b = std::cbrt(std::fabs(z.x));
    const double c = std::fabs(z.v);
    return std::max(a, std::max(b, c));
}

// Lebesgue measure of B_r^kin = {|s| < r^2} x {|y| < r^3} x {|w| < r}.
// General-d formula 2 r^2 * omega_d r^{3d} * omega_d r^d with omega_d the
// d-ball volume; for d = 1, omega_1 = 2 and the measure is 8 r^6.
inline double kinetic_ball_volume(double r, const Dimension& dim = {1}) {
    if (!(r > 0.0)) throw std::invalid_argument("kinetic_ball_volume: r must be positive");
    const double omega_d = dim.d == 1
        ? 2.0
        : std::pow(3.14159265358979323846, 0.5 * dim.d) / std::tgamma(0.5 * dim.d + 1.0);
    return 2.0 * r * r * omega_d * std::pow(r, 3 * dim.d) * omega_d * std::pow(r, dim.d);
}

}  // namespace kinv
