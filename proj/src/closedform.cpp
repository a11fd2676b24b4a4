#include "ym/closedform.hpp"

#include <cmath>

#include "ym/errors.hpp"

namespace ym {

void validate(const SolitonParams& p) {
    if (!(p.a > 0.0) || !std::isfinite(p.a))
        throw DomainError("soliton: scale a must be positive and finite");
    if (p.sign != 1 && p.sign != -1)
        throw DomainError("soliton: sign must be +1 or -1");
}

double soliton_value(const SolitonParams& p, double r) {
    validate(p);
    if (!(r >= 0.0))
        throw DomainError("soliton_value: r must be >= 0");
    // For r > 1 divide through by r^2 so r ~ 1e154 cannot overflow r*r.
    if (r > 1.0) {
        const double q = (p.a / r) * (p.a / r);
        return p.sign * (q - 1.0) / (q + 1.0);
    }
    const double a2 = p.a * p.a;
    const double r2 = r * r;
    return p.sign * (a2 - r2) / (a2 + r2);
}

double soliton_cylinder(const SolitonParams& p, double t) {
    validate(p);
    return -p.sign * std::tanh(t - std::log(p.a));
}

RadialProfile soliton_profile(const SolitonParams& p, double t0, double t1,
                              int n) {
    validate(p);
    if (n < 2)
        throw DomainError("soliton_profile: need at least 2 points");
    if (!(t1 > t0))
        throw DomainError("soliton_profile: need t1 > t0");
    const double h = (t1 - t0) / (n - 1);
    std::vector<double> t(n), v(n);
    for (int i = 0; i < n; ++i) {
        t[i] = t0 + i * h;
        v[i] = soliton_cylinder(p, t[i]);
    }
    return profile_from_cylinder(t, v, static_cast<double>(p.sign));
}

std::vector<double> pde_residual(const RadialProfile& p) {
    validate(p);
    if (p.r.size() < 3)
        throw DomainError("pde_residual: need at least 3 grid points");
    const std::vector<double> t = t_grid(p);
    const double h = uniform_spacing(t);
    const double inv_h2 = 1.0 / (h * h);
    const std::size_t n = p.u.size();
    std::vector<double> res(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double v = p.u[i];
        const double lap = (p.u[i + 1] - 2.0 * v + p.u[i - 1]) * inv_h2;
        res[i - 1] = -lap - 2.0 * v * (1.0 - v * v);
    }
    return res;
}

namespace {

// Integrand v_t^2 + (v^2-1)^2 at node i, v_t by second-order differences.
double energy_integrand(const std::vector<double>& u, std::size_t i, double h) {
    const std::size_t n = u.size();
    double vt;
    if (i == 0)
        vt = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    else if (i == n - 1)
        vt = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
    else
        vt = (u[i + 1] - u[i - 1]) / (2.0 * h);
    const double w = u[i] * u[i] - 1.0;
    return vt * vt + w * w;
}

EnergyValue energy_nodes(const RadialProfile& p, std::size_t i0,
                         std::size_t i1, double h,
                         const std::vector<double>& t) {
    double sum = 0.5 * (energy_integrand(p.u, i0, h) +
                        energy_integrand(p.u, i1, h));
    for (std::size_t i = i0 + 1; i < i1; ++i)
        sum += energy_integrand(p.u, i, h);
    EnergyValue e;
    e.value = 2.0 * M_PI * h * sum;
    e.finite = true;
    e.window[0] = t[i0];
    e.window[1] = t[i1];
    return e;
}

} // namespace

EnergyValue energy(const RadialProfile& p, double t0, double t1) {
    validate(p);
    if (p.r.size() < 3)
        throw DomainError("energy: need at least 3 grid points");
    if (!(t1 > t0))
        throw DomainError("energy: need t1 > t0");
    const std::vector<double> t = t_grid(p);
    const double h = uniform_spacing(t);
    const double slack = 1e-9 * std::max(1.0, h);
    if (t0 < t.front() - slack || t1 > t.back() + slack)
        throw DomainError("energy: window outside grid");
    // Snap the window to grid nodes.
    const auto clamp_idx = [&](double x) {
        double k = (x - t.front()) / h;
        if (k < 0.0) k = 0.0;
        if (k > static_cast<double>(t.size() - 1)) k = static_cast<double>(t.size() - 1);
        return k;
    };
    const std::size_t i0 = static_cast<std::size_t>(std::ceil(clamp_idx(t0) - 1e-9));
    const std::size_t i1 = static_cast<std::size_t>(std::floor(clamp_idx(t1) + 1e-9));
    if (i1 <= i0)
        throw DomainError("energy: window narrower than one grid cell");
    return energy_nodes(p, i0, i1, h, t);
}

EnergyValue energy_whole_line(const RadialProfile& p) {
    validate(p);
    if (p.r.size() < 3)
        throw DomainError("energy: need at least 3 grid points");
    const std::vector<double> t = t_grid(p);
    const double h = uniform_spacing(t);
    EnergyValue e = energy_nodes(p, 0, p.u.size() - 1, h, t);
    // Declare the whole-line integral finite only when the integrand has
    // decayed at both truncation ends; otherwise the verdict is infinite and
    // value still reports the windowed integral.
    const double g_left = energy_integrand(p.u, 0, h);
    const double g_right = energy_integrand(p.u, p.u.size() - 1, h);
    e.finite = (g_left < 1e-12) && (g_right < 1e-12);
    return e;
}

} // namespace ym
