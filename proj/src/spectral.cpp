#include "kinverify/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace kinv {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> t = a[i + k + len / 2] * w;
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& v : a) v *= inv_n;
    }
}

std::vector<double> fft_frequencies(int n, double dx) {
    std::vector<double> xi(n);
    const double base = 2.0 * M_PI / (n * dx);
    for (int k = 0; k < n; ++k) {
        const int kk = (k <= n / 2) ? k : k - n;
        xi[k] = base * kk;
    }
    return xi;
}

namespace {

GridField apply_multiplier_rows(const GridField& f,
                                const std::vector<std::complex<double>>& mult) {
    const GridSpec& g = f.grid;
    if (!is_pow2(g.nx))
        throw std::invalid_argument("spectral operator: nx must be a power of two");
    if (static_cast<int>(mult.size()) != g.nx)
        throw std::invalid_argument("spectral operator: multiplier length mismatch");
    GridField out(g);
    std::vector<std::complex<double>> row(g.nx);
    for (int i = 0; i < g.nt; ++i) {
        for (int k = 0; k < g.nv; ++k) {
            for (int j = 0; j < g.nx; ++j) row[j] = f.at(i, j, k);
            fft_pow2(row, false);
            for (int j = 0; j < g.nx; ++j) row[j] *= mult[j];
            fft_pow2(row, true);
            for (int j = 0; j < g.nx; ++j) out.at(i, j, k) = row[j].real();
        }
    }
    return out;
}

template <typename Fn>
std::vector<std::complex<double>> build_multiplier(const GridSpec& g, Fn&& fn) {
    const std::vector<double> xi = fft_frequencies(g.nx, g.dx());
    std::vector<std::complex<double>> m(g.nx);
    for (int k = 0; k < g.nx; ++k) m[k] = fn(xi[k]);
    return m;
}

}  // namespace

GridField apply_x_multiplier(const GridField& f, const std::vector<double>& mult) {
    std::vector<std::complex<double>> m(mult.begin(), mult.end());
    return apply_multiplier_rows(f, m);
}

GridField frac_dx_spectral(const GridField& f, double order) {
    return apply_multiplier_rows(
        f, build_multiplier(f.grid, [order](double xi) -> std::complex<double> {
            return std::pow(std::fabs(xi), order);
        }));
}

GridField dx_spectral(const GridField& f) {
    auto m = build_multiplier(f.grid, [](double xi) -> std::complex<double> {
        return {0.0, xi};
    });
    // a real row cannot carry an odd (purely imaginary) symbol on the unpaired
    // Nyquist mode, so that bin is zeroed by convention
    if (f.grid.nx > 1) m[f.grid.nx / 2] = 0.0;
    return apply_multiplier_rows(f, m);
}

double lp_chi(double u) {
    if (u <= 1.0) return 1.0;
    if (u >= 2.0) return 0.0;
    const double a = std::exp(-1.0 / (2.0 - u));
    const double b = std::exp(-1.0 / (u - 1.0));
    return a / (a + b);
}

double lp_eta(double u) { return lp_chi(u) - lp_chi(2.0 * u); }

double lp_eta_tilde(double u) { return lp_chi(0.5 * u) - lp_chi(4.0 * u); }

LPBank LPBank::for_grid(const GridSpec& g) {
    if (!is_pow2(g.nx)) throw std::invalid_argument("LPBank: nx must be a power of two");
    const double xi_min = M_PI / g.X;                  // lowest nonzero |frequency|
    const double xi_max = M_PI * g.nx / (2.0 * g.X);   // Nyquist
    LPBank b;
    // sum_{j_min..j_max} eta_j = chi(2^{-j_max}|xi|) - chi(2^{-j_min+1}|xi|);
    // the first factor must be 1 (|xi| <= 2^{j_max}) and the second 0
    // (|xi| >= 2^{j_min}) at every nonzero grid frequency.
    b.j_max = static_cast<int>(std::ceil(std::log2(xi_max)));
    b.j_min = static_cast<int>(std::floor(std::log2(xi_min)));
    return b;
}

GridField lp_project(const GridField& f, int j, const LPBank& bank, bool widened) {
    if (j < bank.j_min || j > bank.j_max)
        throw std::invalid_argument("lp_project: j outside bank range");
    const double scale = std::pow(2.0, -j);
    return apply_multiplier_rows(
        f, build_multiplier(f.grid, [scale, widened](double xi) -> std::complex<double> {
            const double u = scale * std::fabs(xi);
            return widened ? lp_eta_tilde(u) : lp_eta(u);
        }));
}

PsiIdentityResult psi_j_identity_check(const GridField& f, int j, const LPBank& bank) {
    PsiIdentityResult res;
    const GridSpec& g = f.grid;
    const std::vector<double> xi = fft_frequencies(g.nx, g.dx());
    const double twoj = std::pow(2.0, j), twomj = std::pow(2.0, -j);
    for (double x : xi) {
        if (x == 0.0) continue;
        const double eta = lp_eta(twomj * std::fabs(x));
        // (i xi) Psi^_j(xi) = (i xi)(-i 2^j xi |xi|^{-2} eta_j) = 2^j eta_j, so the
        // composed multiplier is eta_j * eta~_j
        const double rhs = eta * lp_eta_tilde(twomj * std::fabs(x));
        res.multiplier_residual = std::max(res.multiplier_residual, std::fabs(eta - rhs));
    }
    // Psi_j has an odd symbol, so its image of the real Nyquist mode would be
    // purely imaginary and is lost when the intermediate field is stored as
    // real samples; check the identity on the complement of that single bin.
    std::vector<std::complex<double>> keep(g.nx, std::complex<double>(1.0, 0.0));
    if (g.nx > 1) keep[g.nx / 2] = 0.0;
    const GridField f0 = apply_multiplier_rows(f, keep);
    const GridField lhs = lp_project(f0, j, bank, false);
    const GridField pt = lp_project(f0, j, bank, true);
    GridField conv = apply_multiplier_rows(
        pt, build_multiplier(g, [twoj, twomj](double x) -> std::complex<double> {
            if (x == 0.0) return {0.0, 0.0};
            return std::complex<double>(0.0, -twoj / x) * lp_eta(twomj * std::fabs(x));
        }));
    conv = dx_spectral(conv);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < lhs.samples.size(); ++i) {
        const double d = lhs.samples[i] - twomj * conv.samples[i];
        num += d * d;
        den += lhs.samples[i] * lhs.samples[i];
    }
    res.field_residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    return res;
}

double psi_j_l1_norm(int j, int n, double len) {
    if (!is_pow2(n)) throw std::invalid_argument("psi_j_l1_norm: n must be a power of two");
    const double dx = len / n;
    std::vector<std::complex<double>> a(n);
    const std::vector<double> xi = fft_frequencies(n, dx);
    const double twoj = std::pow(2.0, j), twomj = std::pow(2.0, -j);
    for (int k = 0; k < n; ++k) {
        const double x = xi[k];
        a[k] = (x == 0.0) ? std::complex<double>(0.0, 0.0)
                          : std::complex<double>(0.0, -twoj / x) * lp_eta(twomj * std::fabs(x));
    }
    // Psi_j(x_m) = ifft(symbol)[m] / dx on the periodic line, so the L1 norm
    // sum |Psi_j| dx is just the sum of ifft magnitudes.
    fft_pow2(a, true);
    double s = 0.0;
    for (const auto& v : a) s += std::abs(v);
    return s;
}

GridField square_function(const GridField& f, const LPBank& bank) {
    GridField acc(f.grid);
    for (int j = bank.j_min; j <= bank.j_max; ++j) {
        const GridField pj = lp_project(f, j, bank, false);
        const double wj = std::pow(2.0, 2.0 * j / 3.0);
        for (std::size_t i = 0; i < acc.samples.size(); ++i)
            acc.samples[i] += wj * pj.samples[i] * pj.samples[i];
    }
    for (double& v : acc.samples) v = std::sqrt(v);
    return acc;
}

}  // namespace kinv
