#pragma once

// Spectral operators on the periodic x-axis: radix-2 FFT, the fractional
// multiplier |xi|^s, and the Littlewood-Paley bank (projections P_j, widened
// P~_j, the Psi_j gradient identity, and the weighted square function).
//
// All multipliers act slice-wise in (t, v); grids must have a power-of-two
// number of x points.

#include <complex>
#include <vector>

#include "kinverify/field.hpp"
#include "kinverify/report.hpp"

namespace kinv {

// In-place iterative radix-2 transform; size must be a power of two.
// inverse=true applies the 1/n-normalized inverse.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

bool is_pow2(int n);

// Frequencies of the length-n lattice with spacing dx: xi_k = 2 pi k / (n dx),
// k = 0..n-1 mapped to the symmetric range (negative for k > n/2).
std::vector<double> fft_frequencies(int n, double dx);

// Apply a real multiplier m(xi) to every x-row of the field.
GridField apply_x_multiplier(const GridField& f, const std::vector<double>& mult);

// D_x^order via the |xi|^order multiplier.
GridField frac_dx_spectral(const GridField& f, double order);

// d/dx via the i*xi multiplier (used by the Psi_j identity).
GridField dx_spectral(const GridField& f);

// Smooth cutoff chi: exactly 1 on [0,1], exactly 0 on [2,inf), glued with the
// standard exp(-1/t) step in between.
double lp_chi(double u);
// eta(u) = chi(u) - chi(2u); support [1/2, 2]
double lp_eta(double u);
// widened profile, equal to 1 on supp eta; support [1/4, 4]
double lp_eta_tilde(double u);

struct LPBank {
    int j_min = 0;
    int j_max = 0;
    // smallest range with sum_j eta(2^{-j}|xi|) = 1 at every nonzero grid frequency
    static LPBank for_grid(const GridSpec& g);
};

GridField lp_project(const GridField& f, int j, const LPBank& bank, bool widened = false);

// Max over nonzero grid frequencies of |eta_j - 2^{-j} (i xi) Psi^_j eta~_j|
// (the multiplier form of P_j g = 2^{-j} d/dx (Psi_j * P~_j g)), plus the
// field-level residual on the given field.  The field check runs on the
// complement of the Nyquist mode: Psi_j has an odd symbol, which a real
// intermediate field cannot carry on that unpaired bin.
struct PsiIdentityResult {
    double multiplier_residual = 0.0;
    double field_residual = 0.0;  // relative L2
};
PsiIdentityResult psi_j_identity_check(const GridField& f, int j, const LPBank& bank);

// l^1 norm (times dx) of the inverse transform of Psi^_j on an n-point line
// of length len; bounded uniformly in j.
double psi_j_l1_norm(int j, int n, double len);

// sqrt( sum_j 2^{2j/3} |P_j f|^2 ) pointwise.
GridField square_function(const GridField& f, const LPBank& bank);

}  // namespace kinv
