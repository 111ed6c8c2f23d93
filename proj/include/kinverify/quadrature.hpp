#pragma once

// Gauss-Legendre rules (cached by order), deterministic pairwise reduction,
// log-spaced grids, and the small statistics helpers (least-squares slope,
// Spearman rank correlation) used by the scaling experiments.

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace kinv {

struct GLRule {
    std::vector<double> x;  // nodes
    std::vector<double> w;  // weights
};

// Rule on [-1, 1]; computed once per order and cached.
const GLRule& gauss_legendre(int n);

// Rule mapped to [a, b].
GLRule gauss_legendre_on(int n, double a, double b);

// Fixed-order pairwise summation: bit-reproducible regardless of how callers
// partition work, and far more accurate than naive accumulation on the large
// node counts used here.
double pairwise_sum(std::span<const double> xs);

std::vector<double> log_grid(double lo, double hi, int n);

// Least-squares slope of ys vs xs.
double fit_slope(std::span<const double> xs, std::span<const double> ys);

// Spearman rank correlation (average ranks on ties).
double spearman_rho(std::span<const double> xs, std::span<const double> ys);

// All random sampling in tests and experiments flows through one seeded
// engine type so runs are reproducible.
inline std::mt19937_64 make_rng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) {
    return std::mt19937_64(seed);
}

}  // namespace kinv
