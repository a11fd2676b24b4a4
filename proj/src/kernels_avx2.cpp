#ifdef YM_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "kernels_detail.hpp"

namespace ym::detail {

namespace {

// Mirrors relax_update / residual_at exactly: same association, separate
// mul and add (no FMA), so lanes match the scalar backend bit for bit.
struct StencilVec {
    __m256d lap_plus_rea;  // (lap_th + lap_t) + rea
};

inline StencilVec stencil(__m256d c, __m256d e, __m256d w, __m256d n,
                          __m256d s, __m256d vinv_t, __m256d vinv_th,
                          __m256d vone, __m256d vtwo) {
    const __m256d two_c = _mm256_mul_pd(vtwo, c);
    const __m256d lap_th =
        _mm256_mul_pd(_mm256_sub_pd(_mm256_add_pd(e, w), two_c), vinv_th);
    const __m256d lap_t =
        _mm256_mul_pd(_mm256_sub_pd(_mm256_add_pd(n, s), two_c), vinv_t);
    const __m256d rea =
        _mm256_mul_pd(two_c, _mm256_sub_pd(vone, _mm256_mul_pd(c, c)));
    return {_mm256_add_pd(_mm256_add_pd(lap_th, lap_t), rea)};
}

inline double reduce_max(__m256d vmax, double mx) {
    double buf[4];
    _mm256_storeu_pd(buf, vmax);
    for (double b : buf) mx = std::max(mx, b);
    return mx;
}

}  // namespace

double relax_step_avx2(const double* src, double* dst, int n_t, int n_theta,
                       double inv_ht2, double inv_hth2, double dt) {
    std::memcpy(dst, src, static_cast<std::size_t>(n_theta) * sizeof(double));
    std::memcpy(dst + static_cast<std::size_t>(n_t - 1) * n_theta,
                src + static_cast<std::size_t>(n_t - 1) * n_theta,
                static_cast<std::size_t>(n_theta) * sizeof(double));
    const __m256d vinv_t = _mm256_set1_pd(inv_ht2);
    const __m256d vinv_th = _mm256_set1_pd(inv_hth2);
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d vone = _mm256_set1_pd(1.0);
    const __m256d vtwo = _mm256_set1_pd(2.0);
    const __m256d abs_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
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
        for (; j + 3 <= n_theta - 2; j += 4) {
            const __m256d c = _mm256_loadu_pd(row + j);
            const __m256d e = _mm256_loadu_pd(row + j + 1);
            const __m256d w = _mm256_loadu_pd(row + j - 1);
            const __m256d n = _mm256_loadu_pd(up + j);
            const __m256d s = _mm256_loadu_pd(dn + j);
            const StencilVec st =
                stencil(c, e, w, n, s, vinv_t, vinv_th, vone, vtwo);
            const __m256d u =
                _mm256_add_pd(c, _mm256_mul_pd(vdt, st.lap_plus_rea));
            _mm256_storeu_pd(out + j, u);
            vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(abs_mask, u));
        }
        for (; j <= n_theta - 2; ++j) scalar_at(j);
        if (n_theta > 1) scalar_at(n_theta - 1);
    }
    return reduce_max(vmax, mx);
}

double residual_max_avx2(const double* v, int n_t, int n_theta, double inv_ht2,
                         double inv_hth2) {
    const __m256d vinv_t = _mm256_set1_pd(inv_ht2);
    const __m256d vinv_th = _mm256_set1_pd(inv_hth2);
    const __m256d vone = _mm256_set1_pd(1.0);
    const __m256d vtwo = _mm256_set1_pd(2.0);
    const __m256d abs_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
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
        for (; j + 3 <= n_theta - 2; j += 4) {
            const __m256d c = _mm256_loadu_pd(row + j);
            const __m256d e = _mm256_loadu_pd(row + j + 1);
            const __m256d w = _mm256_loadu_pd(row + j - 1);
            const __m256d n = _mm256_loadu_pd(up + j);
            const __m256d s = _mm256_loadu_pd(dn + j);
            const StencilVec st =
                stencil(c, e, w, n, s, vinv_t, vinv_th, vone, vtwo);
            vmax = _mm256_max_pd(vmax,
                                 _mm256_andnot_pd(abs_mask, st.lap_plus_rea));
        }
        for (; j <= n_theta - 2; ++j) scalar_at(j);
        if (n_theta > 1) scalar_at(n_theta - 1);
    }
    return reduce_max(vmax, mx);
}

}  // namespace ym::detail

#endif  // YM_HAVE_AVX2_KERNELS
