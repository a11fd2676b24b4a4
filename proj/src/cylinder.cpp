#include "ym/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "kernels_detail.hpp"
#include "ym/errors.hpp"

namespace ym {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

CylinderField make_field(double t_min, double t_max, int n_t, int n_theta) {
    CylinderField f;
    f.t_min = t_min;
    f.t_max = t_max;
    f.n_t = n_t;
    f.n_theta = n_theta;
    f.v.assign(static_cast<std::size_t>(n_t) * n_theta, 0.0);
    validate(f);
    return f;
}

// Neumann boundary rows advance like interior rows with the ghost row
// mirrored onto the first interior row. Applied by the driver so every
// kernel backend shares the single implementation.
void advance_neumann_rows(const CylinderField& f, const std::vector<double>& src,
                          std::vector<double>& dst, double inv_ht2,
                          double inv_hth2, double dt, double& max_abs) {
    const int nth = f.n_theta;
    auto update_row = [&](int row_i, int mirror_i) {
        const double* row = src.data() + static_cast<std::size_t>(row_i) * nth;
        const double* mir = src.data() + static_cast<std::size_t>(mirror_i) * nth;
        double* out = dst.data() + static_cast<std::size_t>(row_i) * nth;
        for (int j = 0; j < nth; ++j) {
            const int jl = j == 0 ? nth - 1 : j - 1;
            const int jr = j == nth - 1 ? 0 : j + 1;
            const double u = detail::relax_update(row[j], row[jr], row[jl],
                                                  mir[j], mir[j], inv_ht2,
                                                  inv_hth2, dt);
            out[j] = u;
            max_abs = std::max(max_abs, std::abs(u));
        }
    };
    if (f.bc_left.kind == BoundaryCondition::Kind::neumann_zero) {
        update_row(0, 1);
    }
    if (f.bc_right.kind == BoundaryCondition::Kind::neumann_zero) {
        update_row(f.n_t - 1, f.n_t - 2);
    }
}

}  // namespace

double CylinderField::h_theta() const { return kTwoPi / n_theta; }

double CylinderField::theta(int j) const { return kTwoPi * j / n_theta; }

void validate(const CylinderField& f) {
    if (f.n_t < 3) throw DomainError("cylinder field needs at least 3 rows");
    if (f.n_theta < 3) throw DomainError("cylinder field needs at least 3 columns");
    if (!(f.t_max > f.t_min)) throw DomainError("cylinder window is empty");
    if (f.v.size() != static_cast<std::size_t>(f.n_t) * f.n_theta) {
        throw DomainError("cylinder field storage size mismatch");
    }
    for (double x : f.v) {
        if (!std::isfinite(x)) throw DomainError("cylinder field has non-finite values");
    }
}

CylinderField field_zero(double t_min, double t_max, int n_t, int n_theta) {
    CylinderField f = make_field(t_min, t_max, n_t, n_theta);
    f.bc_left = BoundaryCondition::dirichlet(0.0);
    f.bc_right = BoundaryCondition::dirichlet(0.0);
    return f;
}

CylinderField field_soliton(const SolitonParams& p, double t_min, double t_max,
                            int n_t, int n_theta) {
    validate(p);
    CylinderField f = make_field(t_min, t_max, n_t, n_theta);
    for (int i = 0; i < n_t; ++i) {
        const double val = soliton_cylinder(p, f.t(i));
        for (int j = 0; j < n_theta; ++j) f.at(i, j) = val;
    }
    f.bc_left = BoundaryCondition::dirichlet(f.at(0, 0));
    f.bc_right = BoundaryCondition::dirichlet(f.at(n_t - 1, 0));
    return f;
}

CylinderField field_perturbed_soliton(const SolitonParams& p, double amp,
                                      double t_min, double t_max, int n_t,
                                      int n_theta) {
    if (!std::isfinite(amp)) throw DomainError("perturbation amplitude not finite");
    CylinderField f = field_soliton(p, t_min, t_max, n_t, n_theta);
    const double la = std::log(p.a);
    for (int i = 1; i < n_t - 1; ++i) {
        const double dtc = f.t(i) - la;
        const double bump = amp * std::exp(-0.5 * dtc * dtc);
        for (int j = 0; j < n_theta; ++j) {
            f.at(i, j) += bump * std::cos(f.theta(j));
        }
    }
    return f;
}

CylinderField field_random(double amp, std::uint64_t seed, double t_min,
                           double t_max, int n_t, int n_theta) {
    if (!std::isfinite(amp) || amp < 0.0) {
        throw DomainError("random amplitude must be finite and nonnegative");
    }
    CylinderField f = field_zero(t_min, t_max, n_t, n_theta);
    // mt19937_64 output is pinned by the standard; mapping the raw 64-bit
    // words ourselves keeps fields byte-identical across platforms.
    std::mt19937_64 gen(seed);
    for (int i = 1; i < n_t - 1; ++i) {
        for (int j = 0; j < n_theta; ++j) {
            const double u01 = static_cast<double>(gen() >> 11) * 0x1.0p-53;
            f.at(i, j) = amp * (2.0 * u01 - 1.0);
        }
    }
    return f;
}

std::pair<CylinderField, RelaxReport> relax(const CylinderField& init,
                                            const RelaxOptions& opts) {
    validate(init);
    if (!(opts.tol > 0.0)) throw DomainError("relax tolerance must be positive");
    if (!(opts.dt_factor > 0.0) || opts.dt_factor > 0.25) {
        throw DomainError(
            "dt_factor outside (0, 0.25]: the explicit update is unstable");
    }
    if (opts.max_steps < 0) throw DomainError("max_steps must be nonnegative");
    if (opts.check_every < 1) throw DomainError("check_every must be positive");

    const KernelBackend backend = opts.backend.value_or(preferred_backend());
    const KernelSet& ks = kernel_set(backend);

    const double ht = init.h_t();
    const double hth = init.h_theta();
    const double inv_ht2 = 1.0 / (ht * ht);
    const double inv_hth2 = 1.0 / (hth * hth);
    const double dt = opts.dt_factor * std::min(ht * ht, hth * hth);

    CylinderField cur = init;
    std::vector<double> next(cur.v.size());

    RelaxReport rep;
    rep.backend = backend;
    rep.dt = dt;
    for (double x : cur.v) rep.max_abs_v = std::max(rep.max_abs_v, std::abs(x));

    auto residual = [&] {
        return ks.residual_max(cur.v.data(), cur.n_t, cur.n_theta, inv_ht2,
                               inv_hth2);
    };

    double res = residual();
    if (res <= opts.tol) rep.converged = true;

    while (!rep.converged && rep.steps < opts.max_steps) {
        const double interior_max = ks.relax_step(
            cur.v.data(), next.data(), cur.n_t, cur.n_theta, inv_ht2, inv_hth2, dt);
        rep.max_abs_v = std::max(rep.max_abs_v, interior_max);
        advance_neumann_rows(cur, cur.v, next, inv_ht2, inv_hth2, dt,
                             rep.max_abs_v);
        cur.v.swap(next);
        ++rep.steps;
        if (rep.steps % opts.check_every == 0) {
            res = residual();
            if (res <= opts.tol) rep.converged = true;
        }
    }
    if (!rep.converged) res = residual();
    rep.final_residual = res;
    rep.anisotropy = theta_anisotropy(cur);
    return {std::move(cur), rep};
}

double theta_anisotropy(const CylinderField& f) {
    validate(f);
    double worst = 0.0;
    for (int i = 0; i < f.n_t; ++i) {
        double lo = f.at(i, 0);
        double hi = lo;
        for (int j = 1; j < f.n_theta; ++j) {
            lo = std::min(lo, f.at(i, j));
            hi = std::max(hi, f.at(i, j));
        }
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

std::vector<double> horizontal_identity(const CylinderField& f) {
    validate(f);
    const double hth = f.h_theta();
    const double inv2ht = 1.0 / (2.0 * f.h_t());
    const double inv2hth = 1.0 / (2.0 * hth);
    std::vector<double> out;
    out.reserve(f.n_t - 2);
    for (int i = 1; i < f.n_t - 1; ++i) {
        double acc = 0.0;
        for (int j = 0; j < f.n_theta; ++j) {
            const int jl = j == 0 ? f.n_theta - 1 : j - 1;
            const int jr = j == f.n_theta - 1 ? 0 : j + 1;
            const double vt = (f.at(i + 1, j) - f.at(i - 1, j)) * inv2ht;
            const double vth = (f.at(i, jr) - f.at(i, jl)) * inv2hth;
            const double val = f.at(i, j);
            const double v2 = val * val;
            acc += -0.5 * vt * vt + 0.5 * vth * vth - v2 + 0.5 * v2 * v2;
        }
        out.push_back(acc * hth);
    }
    return out;
}

std::vector<double> phi_profile(const CylinderField& f) {
    validate(f);
    const double hth = f.h_theta();
    std::vector<double> out;
    out.reserve(f.n_t);
    for (int i = 0; i < f.n_t; ++i) {
        double acc = 0.0;
        for (int j = 0; j < f.n_theta; ++j) acc += f.at(i, j) * f.at(i, j);
        out.push_back(acc * hth);
    }
    return out;
}

MovingPlaneReport moving_plane_check(const CylinderField& f) {
    validate(f);
    MovingPlaneReport rep;
    const int nt = f.n_t;
    const int nth = f.n_theta;
    const double ht = f.h_t();

    double min_vt = std::numeric_limits<double>::infinity();
    const double inv2ht = 1.0 / (2.0 * ht);
    for (int i = 1; i < nt - 1; ++i) {
        for (int j = 0; j < nth; ++j) {
            min_vt = std::min(min_vt, (f.at(i + 1, j) - f.at(i - 1, j)) * inv2ht);
        }
    }
    rep.min_vt = min_vt;

    double vlo = f.v[0];
    double vhi = f.v[0];
    for (double x : f.v) {
        vlo = std::min(vlo, x);
        vhi = std::max(vhi, x);
    }
    if (vhi - vlo < 1e-12) {
        // Constant field: every center reflects it onto itself; nothing to
        // decide.
        rep.degenerate = true;
        rep.best_lambda = 0.5 * (f.t_min + f.t_max);
        rep.reflection_defect = 0.0;
        return rep;
    }

    // Candidate centers at half-grid resolution: center index c2 means
    // lambda = t_min + c2 * h_t / 2; row i mirrors onto row c2 - i.
    // Centers whose mirrored range covers under half the rows are skipped,
    // otherwise a short tail can fake a symmetric match.
    const int min_overlap = (nt + 1) / 2;
    const int c2_max = 2 * (nt - 1);
    std::vector<double> defects(static_cast<std::size_t>(c2_max) + 1,
                                std::numeric_limits<double>::quiet_NaN());
    int best_c2 = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c2 = 0; c2 <= c2_max; ++c2) {
        const int lo = std::max(0, c2 - (nt - 1));
        const int hi = std::min(nt - 1, c2);
        if (hi - lo + 1 < min_overlap) continue;
        double d = 0.0;
        for (int i = lo; i <= hi; ++i) {
            const int m = c2 - i;
            if (m < i) break;
            const double* a = f.v.data() + static_cast<std::size_t>(i) * nth;
            const double* b = f.v.data() + static_cast<std::size_t>(m) * nth;
            for (int j = 0; j < nth; ++j) d = std::max(d, std::abs(a[j] - b[j]));
        }
        defects[static_cast<std::size_t>(c2)] = d;
        if (d < best_d) {
            best_d = d;
            best_c2 = c2;
        }
    }
    if (best_c2 < 0) {
        rep.reflection_defect = std::numeric_limits<double>::infinity();
        return rep;
    }

    double lambda = f.t_min + 0.5 * best_c2 * ht;
    // Sub-grid refinement: fit a parabola through the defect at the best
    // center and its two neighbors (spacing h_t / 2), clamp the vertex
    // shift to half a spacing.
    if (best_c2 > 0 && best_c2 < c2_max) {
        const double dm = defects[static_cast<std::size_t>(best_c2) - 1];
        const double dp = defects[static_cast<std::size_t>(best_c2) + 1];
        if (std::isfinite(dm) && std::isfinite(dp)) {
            const double den = dm - 2.0 * best_d + dp;
            if (den > 0.0) {
                double delta = 0.25 * ht * (dm - dp) / den;
                delta = std::clamp(delta, -0.25 * ht, 0.25 * ht);
                lambda += delta;
            }
        }
    }
    rep.best_lambda = lambda;
    rep.reflection_defect = best_d;
    return rep;
}

}  // namespace ym
