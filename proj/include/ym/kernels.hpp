#pragma once

#include <string>
#include <vector>

namespace ym {

// The relaxation inner loop exists in a scalar reference form and in SIMD
// forms selected at runtime. Every backend evaluates the identical
// floating-point operation tree (kernel translation units are built with
// contraction disabled), so all backends produce bit-identical fields.
enum class KernelBackend { scalar, avx2, neon };

// One explicit Euler update of the interior rows:
//   dst = src + dt * (v_tt + v_theta_theta + 2 v (1 - v^2))
// theta wraps modulo n_theta (no seam column); rows 0 and n_t - 1 are
// copied through unchanged, the caller owns boundary conditions. Returns
// max |dst| over the interior rows.
using RelaxStepFn = double (*)(const double* src, double* dst, int n_t,
                               int n_theta, double inv_ht2, double inv_hth2,
                               double dt);

// Max over interior rows of |v_tt + v_theta_theta + 2 v (1 - v^2)|.
using ResidualMaxFn = double (*)(const double* v, int n_t, int n_theta,
                                 double inv_ht2, double inv_hth2);

struct KernelSet {
    const char* name;
    RelaxStepFn relax_step;
    ResidualMaxFn residual_max;
};

bool backend_available(KernelBackend b);
std::vector<KernelBackend> available_backends();
KernelBackend preferred_backend();  // fastest available on this machine

// Throws DomainError if the backend was not compiled in or the CPU lacks
// the instruction set.
const KernelSet& kernel_set(KernelBackend b);

const char* backend_name(KernelBackend b);
// Accepts "scalar", "avx2", "neon", or "auto" (preferred).
KernelBackend backend_from_name(const std::string& name);

}  // namespace ym
