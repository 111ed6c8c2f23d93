#include "kinverify/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "kinverify/quadrature.hpp"
#include "kinverify/spectral.hpp"

namespace kinv {

namespace {

// Antiderivatives of h^{-4/3} and h * h^{-4/3}.
double anti0(double h) { return -3.0 / std::cbrt(h); }
double anti1(double h) { return 1.5 * std::cbrt(h * h); }

struct SiLineWeights {
    double dy = 0.0;
    std::vector<double> w;  // shifts k = 1..n-1
    double tail = 0.0;      // total h^{-4/3} mass of all shifts >= n
};

SiLineWeights si_line_weights(int n, double dy) {
    SiLineWeights out;
    out.dy = dy;
    out.w.assign(static_cast<std::size_t>(n), 0.0);
    double covered = 0.0;
    for (int k = 1; k < n; ++k) {
        out.w[static_cast<std::size_t>(k)] = si_hat_weight(k, dy);
        covered += out.w[static_cast<std::size_t>(k)];
    }
    // Everything at distance >= n*dy sees only zeros, so those hats act as
    // a multiple of 2 g(x); their combined weight is the full mass over
    // (dy, infinity) minus what the enumerated hats already carry.
    out.tail = 3.0 / std::cbrt(dy) - covered;
    return out;
}

std::vector<double> apply_line(const std::vector<double>& g,
                               const SiLineWeights& wts) {
    const int n = static_cast<int>(g.size());
    const double c = frac13_si_constant();
    const double inner_coeff = 0.6 / std::cbrt(wts.dy);
    std::vector<double> out(g.size(), 0.0);
    for (int i = 0; i < n; ++i) {
        const double gi = g[static_cast<std::size_t>(i)];
        const double gp = (i + 1 < n) ? g[static_cast<std::size_t>(i + 1)] : 0.0;
        const double gm = (i - 1 >= 0) ? g[static_cast<std::size_t>(i - 1)] : 0.0;
        double acc = (2.0 * gi - gp - gm) * inner_coeff;
        for (int k = 1; k < n; ++k) {
            const double ga = (i + k < n) ? g[static_cast<std::size_t>(i + k)] : 0.0;
            const double gb = (i - k >= 0) ? g[static_cast<std::size_t>(i - k)] : 0.0;
            acc += wts.w[static_cast<std::size_t>(k)] * (2.0 * gi - ga - gb);
        }
        acc += wts.tail * 2.0 * gi;
        out[static_cast<std::size_t>(i)] = c * acc;
    }
    return out;
}

void apply_periodic(const std::vector<double>& g, const SiPeriodicWeights& wts,
                    std::vector<double>& out) {
    const int n = wts.n;
    const double c = frac13_si_constant();
    const double inner_coeff = 0.6 / std::cbrt(wts.dy);
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= static_cast<double>(n);
    out.assign(g.size(), 0.0);
    for (int i = 0; i < n; ++i) {
        const double gi = g[static_cast<std::size_t>(i)];
        const double gp = g[static_cast<std::size_t>((i + 1) % n)];
        const double gm = g[static_cast<std::size_t>((i - 1 + n) % n)];
        double acc = (2.0 * gi - gp - gm) * inner_coeff;
        for (int k = 1; k <= n / 2; ++k) {
            const double ga = g[static_cast<std::size_t>((i + k) % n)];
            const double gb = g[static_cast<std::size_t>((i - k + n) % n)];
            acc += wts.w[static_cast<std::size_t>(k)] * (2.0 * gi - ga - gb);
        }
        acc += 2.0 * (gi - mean) * wts.mean_coeff;
        out[static_cast<std::size_t>(i)] = c * acc;
    }
}

}  // namespace

double frac13_si_constant() {
    const double s = 1.0 / 6.0;
    return std::pow(4.0, s) * s * std::tgamma(0.5 + s) /
           (std::sqrt(M_PI) * std::tgamma(1.0 - s));
}

double si_hat_weight(long k, double dy) {
    const double a = std::max(dy, (static_cast<double>(k) - 1.0) * dy);
    const double b = static_cast<double>(k) * dy;
    const double cc = (static_cast<double>(k) + 1.0) * dy;
    double w = 0.0;
    if (b > a) {
        w += (anti1(b) - anti1(a)) / dy -
             (static_cast<double>(k) - 1.0) * (anti0(b) - anti0(a));
    }
    w += (static_cast<double>(k) + 1.0) * (anti0(cc) - anti0(b)) -
         (anti1(cc) - anti1(b)) / dy;
    return w;
}

std::vector<double> frac13_si_line(const std::vector<double>& g, double dy) {
    if (g.empty()) return {};
    return apply_line(g, si_line_weights(static_cast<int>(g.size()), dy));
}

SiPeriodicWeights si_periodic_weights(int n, double dy, int images) {
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("si_periodic_weights: need even n >= 4");
    }
    SiPeriodicWeights out;
    out.n = n;
    out.dy = dy;
    out.w.assign(static_cast<std::size_t>(n / 2 + 1), 0.0);
    for (int k = 1; k < n / 2; ++k) {
        double w = si_hat_weight(k, dy);
        for (int m = 1; m <= images; ++m) {
            w += si_hat_weight(static_cast<long>(m) * n - k, dy);
            w += si_hat_weight(static_cast<long>(m) * n + k, dy);
        }
        out.w[static_cast<std::size_t>(k)] = w;
    }
    // The antipodal class: distances (m + 1/2) * period, each realized once.
    {
        double w = 0.0;
        for (int m = 0; m <= images; ++m) {
            w += si_hat_weight((2L * m + 1L) * (n / 2), dy);
        }
        out.w[static_cast<std::size_t>(n / 2)] = w;
    }
    const double h_cut = (static_cast<double>(images) + 0.5) *
                         static_cast<double>(n) * dy;
    // Beyond the last image the periodic samples average to the row mean.
    out.mean_coeff = 3.0 / std::cbrt(h_cut);
    return out;
}

std::vector<double> frac13_si_periodic(const std::vector<double>& g,
                                       const SiPeriodicWeights& wts) {
    if (static_cast<int>(g.size()) != wts.n) {
        throw std::invalid_argument("frac13_si_periodic: size mismatch");
    }
    std::vector<double> out;
    apply_periodic(g, wts, out);
    return out;
}

GridField frac_dx(const GridField& f, double order, FracBackend backend) {
    if (backend == FracBackend::Spectral) {
        return frac_dx_spectral(f, order);
    }
    if (std::fabs(order - 1.0 / 3.0) > 1e-12) {
        throw std::invalid_argument(
            "frac_dx: singular-integral backend implements order 1/3 only");
    }
    const GridSpec& g = f.grid;
    const SiPeriodicWeights wts = si_periodic_weights(g.nx, g.dx());
    GridField out;
    out.grid = g;
    out.samples.assign(f.samples.size(), 0.0);
    std::vector<double> row(static_cast<std::size_t>(g.nx), 0.0);
    std::vector<double> drow;
    for (int i = 0; i < g.nt; ++i) {
        for (int k = 0; k < g.nv; ++k) {
            for (int j = 0; j < g.nx; ++j) {
                row[static_cast<std::size_t>(j)] = f.samples[g.index(i, j, k)];
            }
            apply_periodic(row, wts, drow);
            for (int j = 0; j < g.nx; ++j) {
                out.samples[g.index(i, j, k)] = drow[static_cast<std::size_t>(j)];
            }
        }
    }
    return out;
}

double si_calibrate_constant(int n, double len) {
    const double dx = len / static_cast<double>(n);
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = -0.5 * len + dx * static_cast<double>(i);
        g[static_cast<std::size_t>(i)] = std::exp(-0.5 * x * x);
    }
    // Spectral reference on the same row.
    std::vector<std::complex<double>> buf(g.begin(), g.end());
    fft_pow2(buf, false);
    const std::vector<double> xi = fft_frequencies(n, dx);
    for (int k = 0; k < n; ++k) {
        buf[static_cast<std::size_t>(k)] *=
            std::cbrt(std::fabs(xi[static_cast<std::size_t>(k)]));
    }
    fft_pow2(buf, true);
    // Singular integral with unit constant.
    const SiPeriodicWeights wts = si_periodic_weights(n, dx);
    std::vector<double> si;
    apply_periodic(g, wts, si);
    const double c = frac13_si_constant();
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < n; ++i) {
        const double raw = si[static_cast<std::size_t>(i)] / c;
        num += raw * buf[static_cast<std::size_t>(i)].real();
        den += raw * raw;
    }
    return num / den;
}

CommuteResult commute_check(const CommuteConfig& cfg) {
    const int n = cfg.cell_n;
    if (!is_pow2(n)) {
        throw std::invalid_argument("commute_check: cell_n must be a power of two");
    }
    const double L = cfg.cell_len;
    const double dy = L / static_cast<double>(n);
    const double tau = cfg.tau;
    const KernelId kid{KernelKind::Mollifier, tau};
    const SupportBox box = kernel_support(kid);

    const GLRule rs = gauss_legendre_on(cfg.nodes_s, box.s_lo, box.s_hi);
    const GLRule rw = gauss_legendre_on(cfg.nodes_w, -box.w_max, box.w_max);
    const SiPeriodicWeights wts = si_periodic_weights(n, dy);
    const std::vector<double> xi = fft_frequencies(n, dy);

    auto lattice = [&](int q) {
        return -0.5 * L + dy * static_cast<double>(q);
    };
    auto gaussian = [](double t, double x, double v) {
        return std::exp(-0.5 * (t * t + x * x + v * v));
    };

    const int nrows = cfg.rows_t * cfg.rows_v;
    std::vector<double> row_t(static_cast<std::size_t>(cfg.rows_t));
    std::vector<double> row_v(static_cast<std::size_t>(cfg.rows_v));
    for (int i = 0; i < cfg.rows_t; ++i) {
        row_t[static_cast<std::size_t>(i)] =
            -1.2 + 2.4 * static_cast<double>(i) /
                        static_cast<double>(cfg.rows_t - 1);
    }
    for (int i = 0; i < cfg.rows_v; ++i) {
        row_v[static_cast<std::size_t>(i)] =
            -1.1 + 2.4 * static_cast<double>(i) /
                        static_cast<double>(cfg.rows_v - 1);
    }

    using Cv = std::vector<std::complex<double>>;
    std::vector<Cv> acc_plain(static_cast<std::size_t>(nrows),
                              Cv(static_cast<std::size_t>(n), {0.0, 0.0}));
    std::vector<Cv> acc_si(static_cast<std::size_t>(nrows),
                           Cv(static_cast<std::size_t>(n), {0.0, 0.0}));

    std::vector<double> slice(static_cast<std::size_t>(n));
    std::vector<double> slice_si;
    Cv khat(static_cast<std::size_t>(n));
    Cv kshat(static_cast<std::size_t>(n));
    Cv ghat(static_cast<std::size_t>(n));

    for (int is = 0; is < cfg.nodes_s; ++is) {
        const double s = rs.x[static_cast<std::size_t>(is)];
        for (int iw = 0; iw < cfg.nodes_w; ++iw) {
            const double w = rw.x[static_cast<std::size_t>(iw)];
            const double wt = rs.w[static_cast<std::size_t>(is)] *
                              rw.w[static_cast<std::size_t>(iw)] * dy;
            bool nonzero = false;
            for (int m = 0; m < n; ++m) {
                const double val = kernel_eval(kid, s, lattice(m), w);
                slice[static_cast<std::size_t>(m)] = val;
                if (val != 0.0) nonzero = true;
            }
            if (!nonzero) continue;
            apply_periodic(slice, wts, slice_si);
            for (int m = 0; m < n; ++m) {
                khat[static_cast<std::size_t>(m)] = slice[static_cast<std::size_t>(m)];
                kshat[static_cast<std::size_t>(m)] = slice_si[static_cast<std::size_t>(m)];
            }
            fft_pow2(khat, false);
            fft_pow2(kshat, false);

            for (int it = 0; it < cfg.rows_t; ++it) {
                for (int iv = 0; iv < cfg.rows_v; ++iv) {
                    const double t = row_t[static_cast<std::size_t>(it)];
                    const double v = row_v[static_cast<std::size_t>(iv)];
                    for (int q = 0; q < n; ++q) {
                        ghat[static_cast<std::size_t>(q)] =
                            gaussian(t + s, lattice(q) + s * v, v + w);
                    }
                    fft_pow2(ghat, false);
                    const int r = it * cfg.rows_v + iv;
                    Cv& ap = acc_plain[static_cast<std::size_t>(r)];
                    Cv& as = acc_si[static_cast<std::size_t>(r)];
                    for (int k = 0; k < n; ++k) {
                        // T[j] = sum_m K[m] G[(j + m - n/2) mod n]; in
                        // frequency space that is (-1)^k conj(Khat) Ghat.
                        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
                        const std::complex<double> base =
                            wt * sgn * ghat[static_cast<std::size_t>(k)];
                        ap[static_cast<std::size_t>(k)] +=
                            base * std::conj(khat[static_cast<std::size_t>(k)]);
                        as[static_cast<std::size_t>(k)] +=
                            base * std::conj(kshat[static_cast<std::size_t>(k)]);
                    }
                }
            }
        }
    }

    double num = 0.0;
    double den = 0.0;
    Cv lhs(static_cast<std::size_t>(n));
    Cv rhs(static_cast<std::size_t>(n));
    for (int r = 0; r < nrows; ++r) {
        for (int k = 0; k < n; ++k) {
            lhs[static_cast<std::size_t>(k)] =
                acc_plain[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                std::cbrt(std::fabs(xi[static_cast<std::size_t>(k)]));
            rhs[static_cast<std::size_t>(k)] =
                acc_si[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
        }
        fft_pow2(lhs, true);
        fft_pow2(rhs, true);
        for (int j = 0; j < n; ++j) {
            const double a = lhs[static_cast<std::size_t>(j)].real();
            const double b = rhs[static_cast<std::size_t>(j)].real();
            num += (a - b) * (a - b);
            den += a * a;
        }
    }
    CommuteResult res;
    res.rel_l2 = std::sqrt(num / den);
    return res;
}

double frac13_kernel_l1(double tau, int nodes_s, int nodes_w, int line_n,
                        double window_factor) {
    const KernelId kid{KernelKind::Mollifier, tau};
    const SupportBox box = kernel_support(kid);
    const double half = window_factor * box.y_max;
    const double dy = 2.0 * half / static_cast<double>(line_n);
    const GLRule rs = gauss_legendre_on(nodes_s, box.s_lo, box.s_hi);
    const GLRule rw = gauss_legendre_on(nodes_w, -box.w_max, box.w_max);
    const SiLineWeights wts = si_line_weights(line_n, dy);

    std::vector<double> row(static_cast<std::size_t>(line_n));
    double total = 0.0;
    for (int is = 0; is < nodes_s; ++is) {
        const double s = rs.x[static_cast<std::size_t>(is)];
        for (int iw = 0; iw < nodes_w; ++iw) {
            const double w = rw.x[static_cast<std::size_t>(iw)];
            bool nonzero = false;
            for (int m = 0; m < line_n; ++m) {
                const double y = -half + dy * (static_cast<double>(m) + 0.5);
                const double val = kernel_eval(kid, s, y, w);
                row[static_cast<std::size_t>(m)] = val;
                if (val != 0.0) nonzero = true;
            }
            if (!nonzero) continue;
            const std::vector<double> drow = apply_line(row, wts);
            double l1 = 0.0;
            for (double v : drow) l1 += std::fabs(v);
            total += rs.w[static_cast<std::size_t>(is)] *
                     rw.w[static_cast<std::size_t>(iw)] * l1 * dy;
        }
    }
    return total;
}

}  // namespace kinv
