#pragma once

// Kinetic convolution T_J f(z) = int J(s,y,w) f(z o (s,y,w)) ds dy dw.
//
// Quadrature nodes are placed through the kernel's support chart: Gauss-
// Legendre in s on the exact time support [-2 sigma^2, -sigma^2], tensor
// Gauss-Legendre in the bump coordinates (b1, b2) on [-1,1]^2, mapped to
// (y, w) through A_{s/sigma^2}(sigma) with the constant Jacobian
// |det A| = sigma^4/2.  Every node lands inside the support, so the
// requested node count is the effective one, and the kernel is still
// evaluated through its raw closed form at (s, y, w).

#include "kinverify/field.hpp"
#include "kinverify/kernels.hpp"
#include "kinverify/phase.hpp"

namespace kinv {

struct ConvolveOptions {
    int nodes_s = 32;       // per-axis node counts in the support chart
    int nodes_b = 32;
    bool grad_y = false;    // convolve against d/dy of the kernel instead
};

double kinetic_convolve_at(const KernelId& id, const AnalyticField& f, const PhasePoint& z,
                           const ConvolveOptions& opt = {});

// Per-grid-point loop; intended for modest grids and cross-checks.  Rejects
// node counts below 8 per axis.
GridField kinetic_convolve(const KernelId& id, const AnalyticField& f, const GridSpec& g,
                           const ConvolveOptions& opt = {});

}  // namespace kinv
