#include "kinverify/bump.hpp"

#include <cmath>

#include "kinverify/quadrature.hpp"

namespace kinv {

double bump_profile(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u2));
}

double bump_profile_d1(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    const double den = 1.0 - u2;
    // P'(u) = P(u) * (-2u) / (1-u^2)^2
    return bump_profile(u) * (-2.0 * u) / (den * den);
}

double bump_profile_d2(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    const double den = 1.0 - u2;
    const double den2 = den * den;
    // P'' = P * [ (2u/den^2)^2 - 2/den^2 - 8u^2/den^3 ]
    const double t = -2.0 * u / den2;
    return bump_profile(u) * (t * t - 2.0 / den2 - 8.0 * u2 / (den2 * den));
}

double bump_profile_integral() {
    static const double ip = [] {
        const GLRule& gl = gauss_legendre(200);
        std::vector<double> terms(gl.x.size());
        for (std::size_t i = 0; i < gl.x.size(); ++i)
            terms[i] = gl.w[i] * bump_profile(gl.x[i]);
        return pairwise_sum(terms);
    }();
    return ip;
}

const BumpSpec& bump_spec() {
    static const BumpSpec spec = [] {
        const double ip = bump_profile_integral();
        // mass = Z^{-1} * (I_P / 2) * I_P * I_P  over (a, b1, b2), so Z = I_P^3 / 2.
        return BumpSpec{ip * ip * ip / 2.0};
    }();
    return spec;
}

double bump_eval(double a, double b1, double b2) {
    const double pa = bump_profile(2.0 * a + 3.0);
    if (pa == 0.0) return 0.0;
    return pa * bump_profile(b1) * bump_profile(b2) / bump_spec().Z;
}

BumpGrad bump_grad(double a, double b1, double b2) {
    const double pa = bump_profile(2.0 * a + 3.0);
    if (pa == 0.0) return {};
    const double p1 = bump_profile(b1), p2 = bump_profile(b2);
    const double inv_z = 1.0 / bump_spec().Z;
    return {pa * bump_profile_d1(b1) * p2 * inv_z, pa * p1 * bump_profile_d1(b2) * inv_z};
}

BumpHess bump_hess(double a, double b1, double b2) {
    const double pa = bump_profile(2.0 * a + 3.0);
    if (pa == 0.0) return {};
    const double p1 = bump_profile(b1), p2 = bump_profile(b2);
    const double d1 = bump_profile_d1(b1), d2 = bump_profile_d1(b2);
    const double inv_z = 1.0 / bump_spec().Z;
    return {pa * bump_profile_d2(b1) * p2 * inv_z,
            pa * d1 * d2 * inv_z,
            pa * p1 * bump_profile_d2(b2) * inv_z};
}

const char* bump_describe() {
    return "psi(a,b1,b2) = P(2a+3)P(b1)P(b2)/Z, P(u)=exp(-1/(1-u^2)), Z=I_P^3/2";
}

}  // namespace kinv
