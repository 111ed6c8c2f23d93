#pragma once

// Singular-integral realization of D^{1/3} in one variable,
//   c * integral over h > 0 of (2 g(x) - g(x+h) - g(x-h)) h^{-4/3} dh,
// discretized by product integration: hat-function weights against h^{-4/3}
// on the shift lattice, the inner interval (0, dy) by the O(h^2) Taylor
// bound, and the far tail in closed form.
//
// Two variants: a whole-line form for compactly supported samples (kernel
// y-slices), and a periodic form whose shift weights carry the summed
// h^{-4/3} mass of all period images plus an exact mean-correction term, so
// it realizes the same operator as the spectral |xi|^{1/3} multiplier on the
// cell.  The constant c_{1,1/6} is closed-form; calibration against the
// spectral backend is kept as a consistency check, not as the source of the
// value.

#include <vector>

#include "kinverify/field.hpp"
#include "kinverify/kernels.hpp"

namespace kinv {

// c_{d,s} for d = 1, s = 1/6 (so D^{2s} = D^{1/3}):
// 4^{1/6} * (1/6) * Gamma(2/3) / (sqrt(pi) * Gamma(5/6))
double frac13_si_constant();

// Product-integration weight of the hat centered at k*dy (k >= 1) against
// h^{-4/3}, with the interval (0, dy) excluded.
double si_hat_weight(long k, double dy);

// Whole-line apply; samples are treated as zero outside the array.
std::vector<double> frac13_si_line(const std::vector<double>& g, double dy);

struct SiPeriodicWeights {
    int n = 0;
    double dy = 0.0;
    std::vector<double> w;   // shift classes k = 1..n/2
    double mean_coeff = 0.0; // tail beyond the last image, applied to 2(g - mean)
};
SiPeriodicWeights si_periodic_weights(int n, double dy, int images = 200);

std::vector<double> frac13_si_periodic(const std::vector<double>& g,
                                       const SiPeriodicWeights& wts);

enum class FracBackend { Spectral, SingularIntegral };

// D_x^{1/3} on a grid field; the singular-integral backend periodizes per
// x-row and requires the same power-of-two lattice as the spectral one.
GridField frac_dx(const GridField& f, double order, FracBackend backend);

// Least-squares fit of the constant against the spectral backend on a
// reference Gaussian row of n points, length len.
double si_calibrate_constant(int n = 1024, double len = 32.0);

// Two-route check of D_x^{1/3} T_{K_tau} f = T_{D_y^{1/3} K_tau} f on the
// Gaussian.  Both routes share one transport quadrature and one periodic
// cell; they differ only in which object the derivative hits (the mollified
// field, spectrally / the kernel's y-slices, singular-integral).
struct CommuteConfig {
    double tau = 1.0;
    int cell_n = 2048;
    double cell_len = 34.0;
    int nodes_s = 12;
    int nodes_w = 16;
    int rows_t = 8;
    int rows_v = 8;
};
struct CommuteResult {
    double rel_l2 = 0.0;
};
CommuteResult commute_check(const CommuteConfig& cfg);

// L1 norm of D_y^{1/3} K_tau over (s, y, w): Gauss-Legendre in (s, w),
// whole-line singular integral along y.
double frac13_kernel_l1(double tau, int nodes_s = 16, int nodes_w = 20,
                        int line_n = 2048, double window_factor = 6.0);

}  // namespace kinv
