#pragma once

// Two-tier field model.  AnalyticField supplies exact off-grid values (kinetic
// convolution leaves any fixed grid), so identity checks carry quadrature
// error only.  GridField is a sampling/aggregation surface with Riemann-sum
// norms.  SeparableField is a third representation for the built-in Gaussian
// test family: a short sum of products (poly * gaussian) in each variable
// separately, which the defect engine exploits to reorder its quadrature
// sums without changing their value.

#include <functional>
#include <string>
#include <vector>

#include "kinverify/phase.hpp"

namespace kinv {

struct AnalyticField {
    std::function<double(const PhasePoint&)> eval;
    // exact (d/dt + v d/dx) of the field; empty when not needed
    std::function<double(const PhasePoint&)> transport;
    // exact d/dv; empty when not needed
    std::function<double(const PhasePoint&)> vgrad;
};

AnalyticField constant_field(double c);
// e^{-(t^2+x^2+v^2)/2}
AnalyticField gaussian_field();
// e^{-(t^2+x^2+v^2)/2} cos(k x)
AnalyticField modulated_gaussian_field(double k);

// A sum of terms P_t(t) G(t) * P_x(x) G(x) * P_v(v) G(v) with G the unit
// Gaussian and P_* polynomials (coefficients low-to-high).
struct SepTerm {
    std::vector<double> pt{1.0};
    std::vector<double> px{1.0};
    std::vector<double> pv{1.0};
};
struct SeparableField {
    std::vector<SepTerm> terms;
    bool empty() const { return terms.empty(); }
};
inline double poly_eval(const std::vector<double>& coeffs, double u) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * u + coeffs[i];
    return acc;
}
double sep_eval(const SeparableField& f, const PhasePoint& z);
AnalyticField to_analytic(const SeparableField& f);

// Uniform box lattice [-T,T) x [-X,X) x [-V,V), left endpoints, row-major
// (t, x, v).  The x-axis is a plain periodic lattice so spectral operators
// apply without remapping.
struct GridSpec {
    int nt = 48, nx = 48, nv = 48;
    double T = 8.0, X = 8.0, V = 8.0;
    // box centers; nonzero when an experiment tracks a drifting support
    double ct = 0.0, cx = 0.0, cv = 0.0;

    double dt() const { return 2.0 * T / nt; }
    double dx() const { return 2.0 * X / nx; }
    double dv() const { return 2.0 * V / nv; }
    double t_at(int i) const { return ct - T + i * dt(); }
    double x_at(int j) const { return cx - X + j * dx(); }
    double v_at(int k) const { return cv - V + k * dv(); }
    double cell_volume() const { return dt() * dx() * dv(); }
    std::size_t size() const {
        return static_cast<std::size_t>(nt) * nx * nv;
    }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * nx + j) * nv + k;
    }
    bool same_shape(const GridSpec& o) const {
        return nt == o.nt && nx == o.nx && nv == o.nv && T == o.T &&
               X == o.X && V == o.V && ct == o.ct && cx == o.cx && cv == o.cv;
    }
};

struct GridField {
    GridSpec grid;
    std::vector<double> samples;

    GridField() = default;
    explicit GridField(const GridSpec& g) : grid(g), samples(g.size(), 0.0) {}
    double& at(int i, int j, int k) { return samples[grid.index(i, j, k)]; }
    double at(int i, int j, int k) const { return samples[grid.index(i, j, k)]; }
};

GridField sample(const AnalyticField& f, const GridSpec& g);

// Riemann-sum L^p norm with the cell volume; p = inf is the sample max.
double lp_norm(const GridField& f, double p);

// f(t, x+h, v) - f(t, x, v).
AnalyticField delta_x_h(const AnalyticField& f, double h);
// Grid version: h must be an integer multiple of dx; periodic wrap in x.
GridField delta_x_h(const GridField& f, double h);

// max over h_grid of || delta_x_h f ||_p / |h|^{1/3}, sampled on g.
double besov_seminorm(const AnalyticField& f, double p, const std::vector<double>& h_grid,
                      const GridSpec& g);

// Binary serialization: magic "KVF1", int32 nt/nx/nv, float64 T/X/V and the
// three centers, then samples as little-endian float64 in storage order.
void write_grid_field(const GridField& f, const std::string& path);
GridField read_grid_field(const std::string& path);

// CSV slice at fixed t-index: header x,v,value.
void export_slice_csv(const GridField& f, int t_index, const std::string& path);

}  // namespace kinv
