#pragma once

// Internal to the kernel translation units.

namespace ym::detail {

// The exact operation tree every backend must reproduce. Any reordering
// here changes bit-level results and must be mirrored in the SIMD bodies.
// No fused multiply-adds: the kernel TUs are compiled with contraction
// off, and the SIMD bodies use separate mul/add intrinsics.
inline double relax_update(double c, double e, double w, double n, double s,
                           double inv_ht2, double inv_hth2, double dt) {
    const double two_c = 2.0 * c;
    const double lap_th = ((e + w) - two_c) * inv_hth2;
    const double lap_t = ((n + s) - two_c) * inv_ht2;
    const double rea = two_c * (1.0 - c * c);
    return c + dt * ((lap_th + lap_t) + rea);
}

inline double residual_at(double c, double e, double w, double n, double s,
                          double inv_ht2, double inv_hth2) {
    const double two_c = 2.0 * c;
    const double lap_th = ((e + w) - two_c) * inv_hth2;
    const double lap_t = ((n + s) - two_c) * inv_ht2;
    const double rea = two_c * (1.0 - c * c);
    return (lap_th + lap_t) + rea;
}

double relax_step_scalar(const double* src, double* dst, int n_t, int n_theta,
                         double inv_ht2, double inv_hth2, double dt);
double residual_max_scalar(const double* v, int n_t, int n_theta,
                           double inv_ht2, double inv_hth2);

#ifdef YM_HAVE_AVX2_KERNELS
double relax_step_avx2(const double* src, double* dst, int n_t, int n_theta,
                       double inv_ht2, double inv_hth2, double dt);
double residual_max_avx2(const double* v, int n_t, int n_theta, double inv_ht2,
                         double inv_hth2);
#endif

#ifdef YM_HAVE_NEON_KERNELS
double relax_step_neon(const double* src, double* dst, int n_t, int n_theta,
                       double inv_ht2, double inv_hth2, double dt);
double residual_max_neon(const double* v, int n_t, int n_theta, double inv_ht2,
                         double inv_hth2);
#endif

}  // namespace ym::detail
