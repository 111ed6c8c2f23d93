#include "kinverify/convolve.hpp"

#include <stdexcept>
#include <vector>

#include "kinverify/quadrature.hpp"
#include "kinverify/trajectory.hpp"

namespace kinv {

double kinetic_convolve_at(const KernelId& id, const AnalyticField& f, const PhasePoint& z,
                           const ConvolveOptions& opt) {
    if (opt.nodes_s < 8 || opt.nodes_b < 8)
        throw std::invalid_argument("kinetic_convolve: need >= 8 nodes per axis");
    const double sigma = id.scale;
    const SupportBox box = kernel_support(id);
    const GLRule qs = gauss_legendre_on(opt.nodes_s, box.s_lo, box.s_hi);
    const GLRule qb = gauss_legendre(opt.nodes_b);
    const double jac = 0.5 * sigma * sigma * sigma * sigma;  // |det A|

    std::vector<double> per_s(opt.nodes_s);
    std::vector<double> inner(static_cast<std::size_t>(opt.nodes_b) * opt.nodes_b);
    for (int i = 0; i < opt.nodes_s; ++i) {
        const double s = qs.x[i];
        const Block2 a = mat_A(s / (sigma * sigma), sigma);
        std::size_t n = 0;
        for (int j = 0; j < opt.nodes_b; ++j) {
            for (int k = 0; k < opt.nodes_b; ++k) {
                const double b1 = qb.x[j], b2 = qb.x[k];
                const double y = a.a11 * b1 + a.a12 * b2;
                const double w = a.a21 * b1 + a.a22 * b2;
                const double kv = opt.grad_y ? kernel_grad_y(id, s, y, w)
                                             : kernel_eval(id, s, y, w);
                const double fv = f.eval(compose(z, {s, y, w}));
                inner[n++] = qb.w[j] * qb.w[k] * kv * fv;
            }
        }
        per_s[i] = qs.w[i] * jac * pairwise_sum(inner);
    }
    return pairwise_sum(per_s);
}

GridField kinetic_convolve(const KernelId& id, const AnalyticField& f, const GridSpec& g,
                           const ConvolveOptions& opt) {
    GridField out(g);
    for (int i = 0; i < g.nt; ++i)
        for (int j = 0; j < g.nx; ++j)
            for (int k = 0; k < g.nv; ++k)
                out.at(i, j, k) =
                    kinetic_convolve_at(id, f, {g.t_at(i), g.x_at(j), g.v_at(k)}, opt);
    return out;
}

}  // namespace kinv
