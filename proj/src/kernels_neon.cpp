#ifdef YM_HAVE_NEON_KERNELS

#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "kernels_detail.hpp"

namespace ym::detail {

namespace {

// Same association as relax_update / residual_at, separate mul and add.
inline float64x2_t stencil(float64x2_t c, float64x2_t e, float64x2_t w,
                           float64x2_t n, float64x2_t s, float64x2_t vinv_t,
                           float64x2_t vinv_th, float64x2_t vone,
                           float64x2_t vtwo) {
    const float64x2_t two_c = vmulq_f64(vtwo, c);
    const float64x2_t lap_th =
        vmulq_f64(vsubq_f64(vaddq_f64(e, w), two_c), vinv_th);
    const float64x2_t lap_t =
        vmulq_f64(vsubq_f64(vaddq_f64(n, s), two_c), vinv_t);
    const float64x2_t rea = vmulq_f64(two_c, vsubq_f64(vone, vmulq_f64(c, c)));
    return vaddq_f64(vaddq_f64(lap_th, lap_t), rea);
}

inline double reduce_max(float64x2_t vmax, double mx) {
    mx = std::max(mx, vgetq_lane_f64(vmax, 0));
    mx = std::max(mx, vgetq_lane_f64(vmax, 1));
    return mx;
}

}  // namespace

double relax_step_neon(const double* src, double* dst, int n_t, int n_theta,
                       double inv_ht2, double inv_hth2, double dt) {
    std::memcpy(dst, src, static_cast<std::size_t>(n_theta) * sizeof(double));
    std::memcpy(dst + static_cast<std::size_t>(n_t - 1) * n_theta,
                src + static_cast<std::size_t>(n_t - 1) * n_theta,
                static_cast<std::size_t>(n_theta) * sizeof(double));
    const float64x2_t vinv_t = vdupq_n_f64(inv_ht2);
    const float64x2_t vinv_th = vdupq_n_f64(inv_hth2);
    const float64x2_t vdt = vdupq_n_f64(dt);
    const float64x2_t vone = vdupq_n_f64(1.0);
    const float64x2_t vtwo = vdupq_n_f64(2.0);
    float64x2_t vmax = vdupq_n_f64(0.0);
    double mx = 0.0;
    for (int i = 1; i < n_t - 1; ++i) {
        const double* row = src + static_cast<std::size_t>(i) * n_theta;
        const double* up = row - n_theta;
        const double* dn = row + n_theta;
        double* out = dst + static_cast<std::size_t>(i) * n_theta;
        auto scalar_at = [&](int j) {
            const int jl = j == 0 ? n_theta - 1 : j - 1;
            const int jr = j == n_theta - 1 ? 0 : j + 1;
            const double u = relax_update(row[j], row[jr], row[jl], up[j],
                                          dn[j], inv_ht2, inv_hth2, dt);
            out[j] = u;
            mx = std::max(mx, std::abs(u));
        };
        scalar_at(0);
        int j = 1;
        for (; j + 1 <= n_theta - 2; j += 2) {
            const float64x2_t c = vld1q_f64(row + j);
            const float64x2_t e = vld1q_f64(row + j + 1);
            const float64x2_t w = vld1q_f64(row + j - 1);
            const float64x2_t n = vld1q_f64(up + j);
            const float64x2_t s = vld1q_f64(dn + j);
            const float64x2_t st =
                stencil(c, e, w, n, s, vinv_t, vinv_th, vone, vtwo);
            const float64x2_t u = vaddq_f64(c, vmulq_f64(vdt, st));
            vst1q_f64(out + j, u);
            vmax = vmaxq_f64(vmax, vabsq_f64(u));
        }
        for (; j <= n_theta - 2; ++j) scalar_at(j);
        if (n_theta > 1) scalar_at(n_theta - 1);
    }
    return reduce_max(vmax, mx);
}

double residual_max_neon(const double* v, int n_t, int n_theta, double inv_ht2,
                         double inv_hth2) {
    const float64x2_t vinv_t = vdupq_n_f64(inv_ht2);
    const float64x2_t vinv_th = vdupq_n_f64(inv_hth2);
    const float64x2_t vone = vdupq_n_f64(1.0);
    const float64x2_t vtwo = vdupq_n_f64(2.0);
    float64x2_t vmax = vdupq_n_f64(0.0);
    double mx = 0.0;
    for (int i = 1; i < n_t - 1; ++i) {
        const double* row = v + static_cast<std::size_t>(i) * n_theta;
        const double* up = row - n_theta;
        const double* dn = row + n_theta;
        auto scalar_at = [&](int j) {
            const int jl = j == 0 ? n_theta - 1 : j - 1;
            const int jr = j == n_theta - 1 ? 0 : j + 1;
            const double r = residual_at(row[j], row[jr], row[jl], up[j],
                                         dn[j], inv_ht2, inv_hth2);
            mx = std::max(mx, std::abs(r));
        };
        scalar_at(0);
        int j = 1;
        for (; j + 1 <= n_theta - 2; j += 2) {
            const float64x2_t c = vld1q_f64(row + j);
            const float64x2_t e = vld1q_f64(row + j + 1);
            const float64x2_t w = vld1q_f64(row + j - 1);
            const float64x2_t n = vld1q_f64(up + j);
            const float64x2_t s = vld1q_f64(dn + j);
            const float64x2_t st =
                stencil(c, e, w, n, s, vinv_t, vinv_th, vone, vtwo);
            vmax = vmaxq_f64(vmax, vabsq_f64(st));
        }
        for (; j <= n_theta - 2; ++j) scalar_at(j);
        if (n_theta > 1) scalar_at(n_theta - 1);
    }
    return reduce_max(vmax, mx);
}

}  // namespace ym::detail

#endif  // YM_HAVE_NEON_KERNELS
