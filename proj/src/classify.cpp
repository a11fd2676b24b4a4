#include "ym/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "ym/errors.hpp"
#include "ym/period.hpp"

namespace ym {

namespace {

// Time from p to the next maximum of v along a periodic orbit of period T.
// Maxima are the falling-direction zeros of v_t (v = +amplitude there).
double phase_to_next_maximum(PhasePoint p, double T) {
    if (p.vt == 0.0) {
        // Already at an extremum: the maximum itself, or half a period
        // away at the minimum.
        return p.v > 0.0 ? 0.0 : 0.5 * T;
    }
    IntegrateOptions opts;
    opts.tol = 1e-10;
    const double span = std::max(1.3 * T, 1.0);
    Orbit orb = integrate(p, {0.0, span}, opts);
    for (const OrbitEvent& ev : orb.events) {
        if (ev.kind == EventKind::vt_zero && ev.direction < 0 && ev.t > 0.0) {
            return ev.t;
        }
    }
    throw NumericError("no maximum located within 1.3 periods");
}

// atanh saturates to +-inf at |v| = 1; cap ln a so the recovered scale
// stays a finite double (exp overflows past ~709).
double clamp_log_scale(double la) { return std::clamp(la, -700.0, 700.0); }

}  // namespace

OriginValue origin_value(const Classification& cls) {
    if (cls.is<TrivialZero>()) return OriginValue::zero;
    if (cls.is<EquilibriumState>()) {
        return cls.as<EquilibriumState>().sign > 0 ? OriginValue::plus_one
                                                   : OriginValue::minus_one;
    }
    if (cls.is<SolitonParams>()) {
        // u(0) = sign * 1 for every a.
        return cls.as<SolitonParams>().sign > 0 ? OriginValue::plus_one
                                                : OriginValue::minus_one;
    }
    return OriginValue::discontinuous;
}

Classification classify_initial(PhasePoint p, double eps_c) {
    if (!std::isfinite(p.v) || !std::isfinite(p.vt)) {
        throw DomainError("classify: state is not finite");
    }
    if (!(eps_c > 0.0)) throw DomainError("classify: eps_c must be positive");

    const double c = first_integral(p);
    Classification out;
    out.c = c;

    if (c < -1.0 - eps_c) {
        // Below the global minimum of the conserved quantity: impossible
        // for exact data, so the state is treated as off-family noise and
        // reported on the escape branch.
        out.value = UnboundedBranch{UnboundedBranch::Reason::c_below_minus_one};
        return out;
    }
    if (std::abs(c + 1.0) <= eps_c) {
        out.value = TrivialZero{};
        return out;
    }
    if (c > eps_c) {
        out.value = UnboundedBranch{UnboundedBranch::Reason::c_above_zero};
        return out;
    }
    if (std::abs(c) <= eps_c) {
        // Level set of the equilibria and the connecting orbits.
        if (std::abs(std::abs(p.v) - 1.0) <= eps_c && std::abs(p.vt) <= eps_c) {
            out.value = EquilibriumState{p.v > 0.0 ? +1 : -1};
            return out;
        }
        if (std::abs(p.v) > 1.0 + eps_c) {
            // On the c = 0 level outside the heteroclinic loop: runs away.
            out.value = UnboundedBranch{UnboundedBranch::Reason::outer_band};
            return out;
        }
        // Connecting orbit: v = -sign * tanh(t - ln a). Solving the two
        // family formulas at the sample point gives sign from the slope
        // direction and ln a = s * atanh(v) relative to the sample time
        // (taken as t = 0 here).
        const int s = p.vt < 0.0 ? +1 : -1;
        const double arg = std::clamp(p.v, -1.0, 1.0);
        const double la = clamp_log_scale(static_cast<double>(s) * std::atanh(arg));
        out.value = SolitonParams{std::exp(la), s};
        return out;
    }

    // c strictly inside (-1, 0): closed level sets around (+-1, 0) plus an
    // outer pair of unbounded branches at |v| >= sqrt(2 - M^2).
    const double M = amplitude_from_c(c);
    const double outer = std::sqrt(2.0 - M * M);
    if (std::abs(p.v) <= M + eps_c) {
        const double T = period_integral(M).period;
        out.value = PeriodicOrbit{M, T, phase_to_next_maximum(p, T)};
        return out;
    }
    if (std::abs(p.v) >= outer - eps_c) {
        out.value = UnboundedBranch{UnboundedBranch::Reason::outer_band};
        return out;
    }
    // The forbidden velocity gap M < |v| < sqrt(2 - M^2) cannot hold real
    // data with this c; only reachable through inconsistent inputs.
    throw DomainError("classify: state lies in the forbidden band for its level set");
}

Classification classify_profile(const RadialProfile& p) {
    validate(p);
    const std::vector<double> t = t_grid(p);
    const std::size_t n = t.size();
    if (n < 7) throw DomainError("classify: profile too short");
    const double h = uniform_spacing(t);

    const double span = t.back() - t.front();
    constexpr double kMinSpan = 6.907755278982137;  // three decades of r
    if (span < kMinSpan) {
        throw DomainError("classify: profile spans fewer than three decades of r");
    }

    // The sample must actually solve the equation before the phase-plane
    // reading means anything.
    const std::vector<double> res = pde_residual(p);
    double res_max = 0.0;
    for (double r : res) res_max = std::max(res_max, std::abs(r));
    const double res_gate = 100.0 * h * h;
    if (res_max > res_gate) {
        throw DomainError("classify: profile does not satisfy the equation (residual " +
                          std::to_string(res_max) + " exceeds gate " +
                          std::to_string(res_gate) + ")");
    }

    // Anchor at mid-grid; fourth-order five-point slope.
    const std::size_t i = std::clamp<std::size_t>(n / 2, 2, n - 3);
    const double vt = (-p.u[i + 2] + 8.0 * p.u[i + 1] - 8.0 * p.u[i - 1] + p.u[i - 2]) /
                      (12.0 * h);
    const double eps = std::max(1e-9, 50.0 * h * h * h * h);

    Classification cls = classify_initial({p.u[i], vt}, eps);

    if (cls.is<SolitonParams>()) {
        // Recover a at the sample nearest the zero crossing, where
        // atanh is best conditioned, and in absolute time.
        std::size_t k = 0;
        for (std::size_t j = 1; j < n; ++j) {
            if (std::abs(p.u[j]) < std::abs(p.u[k])) k = j;
        }
        const std::size_t kc = std::clamp<std::size_t>(k, 1, n - 2);
        const int s = p.u[kc + 1] - p.u[kc - 1] < 0.0 ? +1 : -1;
        const double va = std::clamp(p.u[k], -1.0, 1.0);
        const double la =
            clamp_log_scale(t[k] + static_cast<double>(s) * std::atanh(va));
        cls.value = SolitonParams{std::exp(la), s};
    }
    return cls;
}

}  // namespace ym
