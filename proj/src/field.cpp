#include "kinverify/field.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "kinverify/quadrature.hpp"

namespace kinv {

AnalyticField constant_field(double c) {
    AnalyticField f;
    f.eval = [c](const PhasePoint&) { return c; };
    f.transport = [](const PhasePoint&) { return 0.0; };
    f.vgrad = [](const PhasePoint&) { return 0.0; };
    return f;
}

AnalyticField gaussian_field() {
    AnalyticField f;
    f.eval = [](const PhasePoint& z) {
        return std::exp(-0.5 * (z.t * z.t + z.x * z.x + z.v * z.v));
    };
    f.transport = [](const PhasePoint& z) {
        const double g = std::exp(-0.5 * (z.t * z.t + z.x * z.x + z.v * z.v));
        return -(z.t + z.v * z.x) * g;
    };
    f.vgrad = [](const PhasePoint& z) {
        const double g = std::exp(-0.5 * (z.t * z.t + z.x * z.x + z.v * z.v));
        return -z.v * g;
    };
    return f;
}

AnalyticField modulated_gaussian_field(double k) {
    AnalyticField f;
    f.eval = [k](const PhasePoint& z) {
        return std::exp(-0.5 * (z.t * z.t + z.x * z.x + z.v * z.v)) * std::cos(k * z.x);
    };
    f.transport = [k](const PhasePoint& z) {
        const double g = std::exp(-0.5 * (z.t * z.t + z.x * z.x + z.v * z.v));
        // (d/dt + v d/dx) [g cos(kx)] = -(t + v x) g cos(kx) - v k g sin(kx)
        return -(z.t + z.v * z.x) * g * std::cos(k * z.x) - z.v * k * g * std::sin(k * z.x);
    };
    f.vgrad = [k](const PhasePoint& z) {
        const double g = std::exp(-0.5 * (z.t * z.t + z.x * z.x + z.v * z.v));
        return -z.v * g * std::cos(k * z.x);
    };
    return f;
}

double sep_eval(const SeparableField& f, const PhasePoint& z) {
    const double gt = std::exp(-0.5 * z.t * z.t);
    const double gx = std::exp(-0.5 * z.x * z.x);
    const double gv = std::exp(-0.5 * z.v * z.v);
    double acc = 0.0;
    for (const SepTerm& term : f.terms)
        acc += poly_eval(term.pt, z.t) * gt * poly_eval(term.px, z.x) * gx *
               poly_eval(term.pv, z.v) * gv;
    return acc;
}

AnalyticField to_analytic(const SeparableField& f) {
    AnalyticField a;
    a.eval = [f](const PhasePoint& z) { return sep_eval(f, z); };
    return a;
}

GridField sample(const AnalyticField& f, const GridSpec& g) {
    GridField out(g);
    for (int i = 0; i < g.nt; ++i)
        for (int j = 0; j < g.nx; ++j)
            for (int k = 0; k < g.nv; ++k)
                out.at(i, j, k) = f.eval({g.t_at(i), g.x_at(j), g.v_at(k)});
    return out;
}

double lp_norm(const GridField& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.samples) m = std::max(m, std::fabs(v));
        return m;
    }
    std::vector<double> terms(f.samples.size());
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        terms[i] = std::pow(std::fabs(f.samples[i]), p);
    return std::pow(pairwise_sum(terms) * f.grid.cell_volume(), 1.0 / p);
}

AnalyticField delta_x_h(const AnalyticField& f, double h) {
    AnalyticField out;
    auto base = f.eval;
    out.eval = [base, h](const PhasePoint& z) {
        return base({z.t, z.x + h, z.v}) - base(z);
    };
    return out;
}

GridField delta_x_h(const GridField& f, double h) {
    const double steps = h / f.grid.dx();
    const long k = std::lround(steps);
    if (std::fabs(steps - k) > 1e-9)
        throw std::invalid_argument("delta_x_h: h must be an integer multiple of dx on grids");
    GridField out(f.grid);
    const int nx = f.grid.nx;
    for (int i = 0; i < f.grid.nt; ++i)
        for (int j = 0; j < nx; ++j) {
            const int js = static_cast<int>(((j + k) % nx + nx) % nx);
            for (int l = 0; l < f.grid.nv; ++l)
                out.at(i, j, l) = f.at(i, js, l) - f.at(i, j, l);
        }
    return out;
}

double besov_seminorm(const AnalyticField& f, double p, const std::vector<double>& h_grid,
                      const GridSpec& g) {
    if (h_grid.empty()) throw std::invalid_argument("besov_seminorm: empty h grid");
    double best = 0.0;
    for (double h : h_grid) {
        if (h == 0.0) throw std::invalid_argument("besov_seminorm: h must be nonzero");
        const GridField d = sample(delta_x_h(f, h), g);
        best = std::max(best, lp_norm(d, p) / std::cbrt(std::fabs(h)));
    }
    return best;
}

namespace {
constexpr char kMagic[4] = {'K', 'V', 'F', '1'};
}

void write_grid_field(const GridField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_grid_field: cannot open " + path);
    os.write(kMagic, 4);
    const std::int32_t dims[3] = {f.grid.nt, f.grid.nx, f.grid.nv};
    os.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    const double ext[6] = {f.grid.T,  f.grid.X,  f.grid.V,
                           f.grid.ct, f.grid.cx, f.grid.cv};
    os.write(reinterpret_cast<const char*>(ext), sizeof(ext));
    os.write(reinterpret_cast<const char*>(f.samples.data()),
             static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write_grid_field: write failed for " + path);
}

GridField read_grid_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_grid_field: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("read_grid_field: bad magic in " + path);
    std::int32_t dims[3];
    is.read(reinterpret_cast<char*>(dims), sizeof(dims));
    double ext[6];
    is.read(reinterpret_cast<char*>(ext), sizeof(ext));
    GridSpec g;
    g.nt = dims[0];
    g.nx = dims[1];
    g.nv = dims[2];
    g.T = ext[0];
    g.X = ext[1];
    g.V = ext[2];
    g.ct = ext[3];
    g.cx = ext[4];
    g.cv = ext[5];
    if (g.nt <= 0 || g.nx <= 0 || g.nv <= 0)
        throw std::runtime_error("read_grid_field: bad dims in " + path);
    GridField f(g);
    is.read(reinterpret_cast<char*>(f.samples.data()),
            static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
    if (!is) throw std::runtime_error("read_grid_field: truncated data in " + path);
    return f;
}

void export_slice_csv(const GridField& f, int t_index, const std::string& path) {
    if (t_index < 0 || t_index >= f.grid.nt)
        throw std::invalid_argument("export_slice_csv: t index out of range");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("export_slice_csv: cannot open " + path);
    os << "x,v,value\n";
    os.precision(17);
    for (int j = 0; j < f.grid.nx; ++j)
        for (int k = 0; k < f.grid.nv; ++k)
            os << f.grid.x_at(j) << ',' << f.grid.v_at(k) << ',' << f.at(t_index, j, k) << '\n';
}

}  // namespace kinv
