#include "kinverify/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace kinv {

ForcingValues forcing(double r) {
    if (r < 0.0) throw std::invalid_argument("forcing: r must be >= 0");
    ForcingValues f;
    if (r == 0.0) {
        // g1, g2, h1, h2 extend continuously by 0; f1, f2 oscillate without limit.
        f.f_defined = false;
        return f;
    }
    const double L = std::log(r);
    const double s = std::sin(L), c = std::cos(L);
    const double r3 = r * r * r;
    f.g1 = r3 * s;
    f.g2 = r3 * c;
    // h_i = g_i' / (2r):  g1' = 3r^2 s + r^2 c, g2' = 3r^2 c - r^2 s
    f.h1 = 0.5 * r * (3.0 * s + c);
    f.h2 = 0.5 * r * (3.0 * c - s);
    // f_i = d/dr h_i
    f.f1 = s + 2.0 * c;
    f.f2 = c - 2.0 * s;
    return f;
}

Block2 mat_W(double r) {
    const ForcingValues f = forcing(r);
    return {f.g1, f.g2, f.h1, f.h2};
}

Block2 mat_D(double delta) { return {delta, 0.0, 0.0, 1.0}; }

Block2 mat_E(double delta, double r) {
    if (r < 0.0) throw std::invalid_argument("mat_E: r must be >= 0");
    return {1.0, delta * r * r, 0.0, 1.0};
}

Block2 mat_A(double m0, double r) {
    if (m0 == 0.0) throw std::invalid_argument("mat_A: m0 must be nonzero");
    if (!(r > 0.0)) throw std::invalid_argument("mat_A: r must be positive");
    // A_{m0}(r) = D_{m0} W(r) D_{m0}^{-1}
    const ForcingValues f = forcing(r);
    return {f.g1, m0 * f.g2, f.h1 / m0, f.h2};
}

double mat_A_det(double m0, double r) {
    const Block2 a = mat_A(m0, r);
    return a.a11 * a.a22 - a.a12 * a.a21;  // == -r^4/2 analytically
}

Block2 mat_A_inv(double m0, double r) {
    const Block2 a = mat_A(m0, r);
    const double det = a.a11 * a.a22 - a.a12 * a.a21;
    return {a.a22 / det, -a.a12 / det, -a.a21 / det, a.a11 / det};
}

ForcingRow mat_F(double m0, double r) {
    if (m0 == 0.0) throw std::invalid_argument("mat_F: m0 must be nonzero");
    if (!(r > 0.0)) throw std::invalid_argument("mat_F: r must be positive");
    const ForcingValues f = forcing(r);
    return {f.f1 / m0, f.f2};
}

PhasePoint endpoint(const TrajectoryParams& m, double r, const PhasePoint& z) {
    if (r < 0.0) throw std::invalid_argument("endpoint: r must be >= 0");
    if (m.m0 == 0.0) throw std::invalid_argument("endpoint: m0 must be nonzero");
    if (r == 0.0) return z;  // E(0) = I, W(0) = 0
    const Block2 a = mat_A(m.m0, r);
    PhasePoint out;
    out.t = z.t + m.m0 * r * r;
    out.x = z.x + m.m0 * r * r * z.v + a.a11 * m.m1 + a.a12 * m.m2;
    out.v = z.v + a.a21 * m.m1 + a.a22 * m.m2;
    return out;
}

TrajectoryParams endpoint_inverse_params(double r, const PhasePoint& offset) {
    if (!(r > 0.0)) throw std::invalid_argument("endpoint_inverse_params: r must be positive");
    if (offset.t == 0.0)
        throw std::invalid_argument("endpoint_inverse_params: time offset is zero (m0 would vanish)");
    TrajectoryParams m;
    m.m0 = offset.t / (r * r);
    const Block2 inv = mat_A_inv(m.m0, r);
    m.m1 = inv.a11 * offset.x + inv.a12 * offset.v;
    m.m2 = inv.a21 * offset.x + inv.a22 * offset.v;
    return m;
}

double gamma_dot_v(const TrajectoryParams& m, double r) {
    const ForcingRow F = mat_F(m.m0, r);
    return F.c1 * m.m1 + F.c2 * m.m2;
}

M1Result verify_M1(const TrajectoryParams& m, double r, double dr, const PhasePoint& z) {
    if (!(r > dr && dr > 0.0)) throw std::invalid_argument("verify_M1: need r > dr > 0");
    auto residual_at = [&](double step) {
        const PhasePoint p = endpoint(m, r + step, z);
        const PhasePoint q = endpoint(m, r - step, z);
        const PhasePoint c = endpoint(m, r, z);
        const double dot_x = (p.x - q.x) / (2.0 * step);
        const double dot_t = (p.t - q.t) / (2.0 * step);
        return std::fabs(dot_x - dot_t * c.v);
    };
    M1Result out;
    out.residual = residual_at(dr);
    out.residual_half = residual_at(0.5 * dr);
    {
        const PhasePoint p = endpoint(m, r + dr, z);
        const PhasePoint q = endpoint(m, r - dr, z);
        const double dot_t = (p.t - q.t) / (2.0 * dr);  // exact for the quadratic t-component
        out.gamma_dot_t_error = std::fabs(dot_t - 2.0 * m.m0 * r);
    }
    return out;
}

M4Result verify_M4(const TrajectoryParams& m, double r, const PhasePoint& z) {
    if (!(r > 0.0)) throw std::invalid_argument("verify_M4: r must be positive");
    const PhasePoint g = endpoint(m, r, z);
    M4Result out;
    out.dot_v = std::fabs(gamma_dot_v(m, r));
    out.dev_v = std::fabs(g.v - z.v) / r;
    out.dev_x = std::fabs(g.x - z.x - m.m0 * z.v * r * r) / (r * r * r);
    out.envelope_v = std::fabs(m.m1) / std::fabs(m.m0) + std::fabs(m.m2);
    out.envelope_x = std::fabs(m.m1) + std::fabs(m.m0) * std::fabs(m.m2);
    return out;
}

}  // namespace kinv
