#include <algorithm>
#include <cmath>
#include <cstring>

#include "kernels_detail.hpp"

namespace ym::detail {

double relax_step_scalar(const double* src, double* dst, int n_t, int n_theta,
                         double inv_ht2, double inv_hth2, double dt) {
    std::memcpy(dst, src, static_cast<std::size_t>(n_theta) * sizeof(double));
    std::memcpy(dst + static_cast<std::size_t>(n_t - 1) * n_theta,
                src + static_cast<std::size_t>(n_t - 1) * n_theta,
                static_cast<std::size_t>(n_theta) * sizeof(double));
    double mx = 0.0;
    for (int i = 1; i < n_t - 1; ++i) {
        const double* row = src + static_cast<std::size_t>(i) * n_theta;
        const double* up = row - n_theta;
        const double* dn = row + n_theta;
        double* out = dst + static_cast<std::size_t>(i) * n_theta;
        for (int j = 0; j < n_theta; ++j) {
            const int jl = j == 0 ? n_theta - 1 : j - 1;
            const int jr = j == n_theta - 1 ? 0 : j + 1;
            const double u = relax_update(row[j], row[jr], row[jl], up[j],
                                          dn[j], inv_ht2, inv_hth2, dt);
            out[j] = u;
            mx = std::max(mx, std::abs(u));
        }
    }
    return mx;
}

double residual_max_scalar(const double* v, int n_t, int n_theta,
                           double inv_ht2, double inv_hth2) {
    double mx = 0.0;
    for (int i = 1; i < n_t - 1; ++i) {
        const double* row = v + static_cast<std::size_t>(i) * n_theta;
        const double* up = row - n_theta;
        const double* dn = row + n_theta;
        for (int j = 0; j < n_theta; ++j) {
            const int jl = j == 0 ? n_theta - 1 : j - 1;
            const int jr = j == n_theta - 1 ? 0 : j + 1;
            const double r = residual_at(row[j], row[jr], row[jl], up[j],
                                         dn[j], inv_ht2, inv_hth2);
            mx = std::max(mx, std::abs(r));
        }
    }
    return mx;
}

}  // namespace ym::detail
