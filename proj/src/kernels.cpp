#include "kinverify/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kinverify/bump.hpp"
#include "kinverify/quadrature.hpp"
#include "kinverify/trajectory.hpp"

namespace kinv {

namespace {

constexpr double kSqrt5 = 2.2360679774997896;

struct ChartPoint {
    double a;            // s / sigma^2
    double b1, b2;       // A^{-1} (y, w)
    Block2 inv;          // A^{-1}
    bool in_support;
};

ChartPoint to_chart(double sigma, double s, double y, double w) {
    ChartPoint c{};
    c.a = s / (sigma * sigma);
    if (!(c.a > -2.0 && c.a < -1.0)) {
        c.in_support = false;
        return c;
    }
    c.inv = mat_A_inv(c.a, sigma);
    c.b1 = c.inv.a11 * y + c.inv.a12 * w;
    c.b2 = c.inv.a21 * y + c.inv.a22 * w;
    c.in_support = std::fabs(c.b1) < 1.0 && std::fabs(c.b2) < 1.0;
    return c;
}

}  // namespace

std::string kernel_name(const KernelId& id) {
    switch (id.kind) {
        case KernelKind::Mollifier: return "K";
        case KernelKind::Tilde: return "Ktilde";
        case KernelKind::Vec: return "Kvec";
        case KernelKind::VecPi: return "Kvecpi";
    }
    return "?";
}

double kernel_eval(const KernelId& id, double s, double y, double w) {
    const double sigma = id.scale;
    if (!(sigma > 0.0)) throw std::invalid_argument("kernel_eval: scale must be positive");
    const ChartPoint c = to_chart(sigma, s, y, w);
    if (!c.in_support) return 0.0;

    const double s6 = std::pow(sigma, -6.0);
    switch (id.kind) {
        case KernelKind::Mollifier:
            return 2.0 * s6 * bump_eval(c.a, c.b1, c.b2);
        case KernelKind::Tilde:
            return -4.0 * s * s6 / sigma * bump_eval(c.a, c.b1, c.b2);
        case KernelKind::Vec: {
            const ForcingRow F = mat_F(c.a, sigma);
            return -2.0 * s6 * bump_eval(c.a, c.b1, c.b2) * (F.c1 * c.b1 + F.c2 * c.b2);
        }
        case KernelKind::VecPi: {
            const BumpGrad g = bump_grad(c.a, c.b1, c.b2);
            return 4.0 * s * s6 / sigma * (g.db1 * c.inv.a12 + g.db2 * c.inv.a22);
        }
    }
    return 0.0;
}

double kernel_grad_y(const KernelId& id, double s, double y, double w) {
    const double sigma = id.scale;
    if (!(sigma > 0.0)) throw std::invalid_argument("kernel_grad_y: scale must be positive");
    const ChartPoint c = to_chart(sigma, s, y, w);
    if (!c.in_support) return 0.0;

    const double s6 = std::pow(sigma, -6.0);
    const double db1 = c.inv.a11;  // d b1 / d y
    const double db2 = c.inv.a21;  // d b2 / d y
    const BumpGrad g = bump_grad(c.a, c.b1, c.b2);
    const double dpsi_dy = g.db1 * db1 + g.db2 * db2;

    switch (id.kind) {
        case KernelKind::Mollifier:
            return 2.0 * s6 * dpsi_dy;
        case KernelKind::Tilde:
            return -4.0 * s * s6 / sigma * dpsi_dy;
        case KernelKind::Vec: {
            const ForcingRow F = mat_F(c.a, sigma);
            const double fb = F.c1 * c.b1 + F.c2 * c.b2;
            const double dfb = F.c1 * db1 + F.c2 * db2;
            return -2.0 * s6 * (dpsi_dy * fb + bump_eval(c.a, c.b1, c.b2) * dfb);
        }
        case KernelKind::VecPi: {
            const BumpHess h = bump_hess(c.a, c.b1, c.b2);
            const double d1 = h.d11 * db1 + h.d12 * db2;  // d/dy of psi_{b1}
            const double d2 = h.d12 * db1 + h.d22 * db2;  // d/dy of psi_{b2}
            return 4.0 * s * s6 / sigma * (d1 * c.inv.a12 + d2 * c.inv.a22);
        }
    }
    return 0.0;
}

SupportBox kernel_support(const KernelId& id) {
    const double sigma = id.scale;
    if (!(sigma > 0.0)) throw std::invalid_argument("kernel_support: scale must be positive");
    const double s2 = sigma * sigma;
    return {-2.0 * s2, -s2, kSqrt5 * s2 * sigma, kSqrt5 * sigma};
}

namespace {

// Tensor quadrature of fn(s, y, w) through the support chart: Gauss-Legendre
// in a = s/sigma^2 on [-2, -1] and in the bump coordinates (b1, b2) on
// [-1, 1]^2, mapped to raw offsets by A_a(sigma).  The raw support has
// parallelogram (y, w) cross-sections that a rectangular rule cuts through,
// which ruins the bump's flat-edge convergence; in the chart every node is
// strictly inside, the Jacobian sigma^2 |det A| = sigma^6/2 is constant, and
// the rule converges superalgebraically again.  fn still receives raw
// (s, y, w), so the closed forms stay the object under test.
template <typename Fn>
double chart_quad(const KernelId& id, int n, Fn&& fn) {
    const double sigma = id.scale;
    const GLRule qa = gauss_legendre_on(n, -2.0, -1.0);
    const GLRule qb = gauss_legendre(n);
    const double jac = 0.5 * std::pow(sigma, 6.0);
    std::vector<double> per_a(n);
    std::vector<double> per_b1(n);
    std::vector<double> per_b2(n);
    for (int i = 0; i < n; ++i) {
        const double s = qa.x[i] * sigma * sigma;
        const Block2 A = mat_A(qa.x[i], sigma);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const double y = A.a11 * qb.x[j] + A.a12 * qb.x[k];
                const double w = A.a21 * qb.x[j] + A.a22 * qb.x[k];
                per_b2[k] = qb.w[k] * fn(s, y, w);
            }
            per_b1[j] = qb.w[j] * pairwise_sum(per_b2);
        }
        per_a[i] = qa.w[i] * pairwise_sum(per_b1);
    }
    return jac * pairwise_sum(per_a);
}

template <typename Fn>
double chart_max(const KernelId& id, int n, Fn&& fn) {
    const double sigma = id.scale;
    const GLRule qa = gauss_legendre_on(n, -2.0, -1.0);
    const GLRule qb = gauss_legendre(n);
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = qa.x[i] * sigma * sigma;
        const Block2 A = mat_A(qa.x[i], sigma);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double y = A.a11 * qb.x[j] + A.a12 * qb.x[k];
                const double w = A.a21 * qb.x[j] + A.a22 * qb.x[k];
                m = std::max(m, std::fabs(fn(s, y, w)));
            }
    }
    return m;
}

}  // namespace

double kernel_mass(const KernelId& id, int n) {
    return chart_quad(id, n, [&](double s, double y, double w) { return kernel_eval(id, s, y, w); });
}

double kernel_norm(const KernelId& id, double theta, int n) {
    if (theta < 1.0) throw std::invalid_argument("kernel_norm: theta must be >= 1");
    if (std::isinf(theta)) return kernel_sup(id, n);
    const double val = chart_quad(id, n, [&](double s, double y, double w) {
        return std::pow(std::fabs(kernel_eval(id, s, y, w)), theta);
    });
    return std::pow(val, 1.0 / theta);
}

double kernel_sup(const KernelId& id, int n) {
    return chart_max(id, n, [&](double s, double y, double w) { return kernel_eval(id, s, y, w); });
}

double kernel_grad_y_l1(const KernelId& id, int n) {
    return chart_quad(id, n,
                    [&](double s, double y, double w) { return std::fabs(kernel_grad_y(id, s, y, w)); });
}

double kernel_grad_y_sup(const KernelId& id, int n) {
    return chart_max(id, n, [&](double s, double y, double w) { return kernel_grad_y(id, s, y, w); });
}

double kernel_x_difference_norm(const KernelId& id, double h, double theta, int n) {
    if (theta < 1.0) throw std::invalid_argument("kernel_x_difference_norm: theta must be >= 1");
    if (h == 0.0) return 0.0;
    const SupportBox box = kernel_support(id);
    if (std::fabs(h) >= 2.0 * box.y_max) {
        // Disjoint supports: |J(.,y+h,.) - J|^theta integrates to twice the
        // kernel's own theta-power.
        return std::pow(2.0, 1.0 / theta) * kernel_norm(id, theta, n);
    }
    // Union of supports in y: [-y_max - |h|, y_max] for h > 0 shifts the first
    // copy left; cover both signs with the symmetric box of half-width
    // y_max + |h|.
    const GLRule qs = gauss_legendre_on(n, box.s_lo, box.s_hi);
    const double yext = box.y_max + std::fabs(h);
    const GLRule qy = gauss_legendre_on(n, -yext, yext);
    const GLRule qw = gauss_legendre_on(n, -box.w_max, box.w_max);
    std::vector<double> per_s(n), per_y(n), per_w(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const double d = kernel_eval(id, qs.x[i], qy.x[j] + h, qw.x[k]) -
                                 kernel_eval(id, qs.x[i], qy.x[j], qw.x[k]);
                per_w[k] = qw.w[k] * std::pow(std::fabs(d), theta);
            }
            per_y[j] = qy.w[j] * pairwise_sum(per_w);
        }
        per_s[i] = qs.w[i] * pairwise_sum(per_y);
    }
    return std::pow(pairwise_sum(per_s), 1.0 / theta);
}

double support_constant(const KernelId& id, int n) {
    const double sigma = id.scale;
    const GLRule qa = gauss_legendre_on(n, -2.0, -1.0);
    const GLRule qb = gauss_legendre(n);
    double c = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = qa.x[i] * sigma * sigma;
        const Block2 A = mat_A(qa.x[i], sigma);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double y = A.a11 * qb.x[j] + A.a12 * qb.x[k];
                const double w = A.a21 * qb.x[j] + A.a22 * qb.x[k];
                c = std::max(c, rho_box({s, y, w}) / sigma);
            }
    }
    return c;
}

}  // namespace kinv
