#pragma once

// The four kinetic kernels in the raw offset variables (s, y, w), d = 1.
//
// Every kernel routes (y, w) back through A_{s/sigma^2}(sigma)^{-1} to the
// bump coordinates (b1, b2) and vanishes unless s/sigma^2 is in (-2, -1):
//   Mollifier  K_sigma    =  2 sigma^{-6} psi
//   Tilde      Kt_sigma   = -4 s sigma^{-7} psi              (>= 0: s < 0 on support)
//   Vec        Kv_sigma   = -2 sigma^{-6} psi * (F . b)
//   VecPi      Kp_sigma   =  4 s sigma^{-7} (grad psi . second column of A^{-1})
// All four are smooth and compactly supported; the support box is
// [-2 sigma^2, -sigma^2] x [-sqrt5 sigma^3, sqrt5 sigma^3] x [-sqrt5 sigma, sqrt5 sigma].

#include <string>

#include "kinverify/phase.hpp"

namespace kinv {

enum class KernelKind { Mollifier, Tilde, Vec, VecPi };

struct KernelId {
    KernelKind kind = KernelKind::Mollifier;
    double scale = 1.0;  // tau for the mollifier, r for the others
};

std::string kernel_name(const KernelId& id);

// Closed-form evaluation at a raw offset (s, y, w).
double kernel_eval(const KernelId& id, double s, double y, double w);

// Analytic d/dy at fixed (s, w), via the chain rule through A^{-1}.
double kernel_grad_y(const KernelId& id, double s, double y, double w);

struct SupportBox {
    double s_lo, s_hi;  // [-2 sigma^2, -sigma^2]
    double y_max;       // sqrt(5) sigma^3
    double w_max;       // sqrt(5) sigma
};
SupportBox kernel_support(const KernelId& id);

// Tensor Gauss-Legendre through the support chart (a, b1, b2), where the
// Jacobian is the constant sigma^6/2 and every node lies inside the support.
double kernel_mass(const KernelId& id, int nodes_per_axis = 64);

// L^theta norm via the same chart rule; theta in [1, inf) by quadrature,
// theta = inf (pass theta <= 0 or use kernel_sup) as the node max.
double kernel_norm(const KernelId& id, double theta, int nodes_per_axis = 64);
double kernel_sup(const KernelId& id, int nodes_per_axis = 64);
double kernel_grad_y_l1(const KernelId& id, int nodes_per_axis = 64);
double kernel_grad_y_sup(const KernelId& id, int nodes_per_axis = 64);

// || J(s, y+h, w) - J(s, y, w) ||_theta.  When |h| exceeds the support width
// the two copies are disjoint and the norm is exactly 2^{1/theta} times the
// kernel norm; that branch is taken explicitly so the quadrature never
// under-resolves two far-apart islands.
double kernel_x_difference_norm(const KernelId& id, double h, double theta,
                                int nodes_per_axis = 64);

// Smallest C with all nonzero-kernel quadrature nodes inside B_{C*scale}^kin.
double support_constant(const KernelId& id, int nodes_per_axis = 48);

}  // namespace kinv
