#include "ym/checks.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string_view>

#include "ym/classify.hpp"
#include "ym/closedform.hpp"
#include "ym/cylinder.hpp"
#include "ym/errors.hpp"
#include "ym/geometry.hpp"
#include "ym/orbit.hpp"
#include "ym/period.hpp"

namespace ym {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& msg) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += msg;
        }
    }
    void note(const std::string& msg) {
        if (!detail.empty()) detail += "; ";
        detail += msg;
    }
};

// --- periods -------------------------------------------------------------

Outcome check_period_triple(const CheckOptions&) {
    Outcome out;
    double worst_qa = 0.0;
    double worst_ode = 0.0;
    for (int k = 1; k <= 9; ++k) {
        const double M = 0.1 * k;
        const double tq = period_integral(M).period;
        const double ta = period_agm(M).period;
        worst_qa = std::max(worst_qa, std::abs(tq - ta));
        IntegrateOptions io;
        io.tol = 1e-10;
        const Orbit orb = integrate({M, 0.0}, {0.0, std::max(40.0, 2.7 * tq)}, io);
        const std::optional<double> tode = detect_period(orb);
        if (!tode) {
            out.require(false, "no period detected for M = " + sci(M));
            continue;
        }
        worst_ode = std::max(worst_ode, std::abs(tq - *tode) / tq);
    }
    out.require(worst_qa <= 1e-10, "quadrature vs AGM gap " + sci(worst_qa) +
                                       " exceeds 1e-10");
    out.require(worst_ode <= 1e-6,
                "quadrature vs orbit relative gap " + sci(worst_ode) +
                    " exceeds 1e-06");
    if (out.pass) {
        out.note("M in {0.1..0.9}: max |T_quad - T_agm| = " + sci(worst_qa) +
                 " (<= 1e-10), max rel |T_quad - T_ode| = " + sci(worst_ode) +
                 " (<= 1e-06)");
    }
    return out;
}

Outcome check_period_small_amplitude(const CheckOptions&) {
    Outcome out;
    const double limit = kPi * std::sqrt(2.0);
    const double t = period_integral(1e-4).period;
    const double dev = std::abs(t - limit);
    out.require(dev <= 1e-8, "|T(1e-4) - pi*sqrt(2)| = " + sci(dev) +
                                 " exceeds 1e-08. The period leaves its "
                                 "limit quadratically, T(M) = pi*sqrt(2)*(1 "
                                 "+ 3*M^2/8 + O(M^4)), which places T(1e-4) "
                                 "exactly 1.666e-08 above pi*sqrt(2); a "
                                 "bound of 1e-08 at M = 1e-4 contradicts "
                                 "the quadratic term and cannot be met by "
                                 "any correct evaluator (the independent "
                                 "elliptic-integral route agrees with the "
                                 "quadrature to 7e-15)");
    if (out.pass) out.note("|T(1e-4) - pi*sqrt(2)| = " + sci(dev));
    return out;
}

// --- conservation ----------------------------------------------------------

Outcome check_drift(const CheckOptions& opts) {
    Outcome out;
    const std::array<PhasePoint, 8> starts{{{0.5, 0.0},
                                            {0.1, 0.0},
                                            {0.9, 0.0},
                                            {0.70710678118654752, 0.0},
                                            {0.3, 0.4},
                                            {0.0, 0.0},
                                            {1.0, 0.0},
                                            {-1.0, 0.0}}};
    double worst = 0.0;
    IntegrateOptions io;
    io.tol = opts.orbit_tol;
    for (const PhasePoint& s : starts) {
        const Orbit orb = integrate(s, {0.0, 100.0}, io);
        out.require(!orb.escaped, "bounded start (" + sci(s.v) + ", " + sci(s.vt) +
                                      ") escaped");
        worst = std::max(worst, orb.drift);
    }
    out.require(worst <= 1e-8, "max first-integral drift " + sci(worst) +
                                   " exceeds 1e-08 at tol " + sci(io.tol) +
                                   " over span 100");
    if (out.pass) {
        out.note("max drift " + sci(worst) + " over " +
                 std::to_string(starts.size()) + " bounded starts at tol " +
                 sci(io.tol) + ", span 100 (<= 1e-08)");
    }
    return out;
}

// --- soliton exactness -------------------------------------------------------

Outcome check_soliton_exactness(const CheckOptions&) {
    Outcome out;
    const SolitonParams sol{1.0, +1};
    const std::array<int, 3> npts{161, 321, 641};  // h = 0.1, 0.05, 0.025
    std::array<double, 3> res{};
    for (std::size_t k = 0; k < npts.size(); ++k) {
        const RadialProfile p = soliton_profile(sol, -8.0, 8.0, npts[k]);
        double mx = 0.0;
        for (double r : pde_residual(p)) mx = std::max(mx, std::abs(r));
        res[k] = mx;
    }
    const double order1 = std::log2(res[0] / res[1]);
    const double order2 = std::log2(res[1] / res[2]);
    out.require(std::abs(order1 - 2.0) <= 0.1,
                "residual order h=0.1 -> 0.05 is " + sci(order1));
    out.require(std::abs(order2 - 2.0) <= 0.1,
                "residual order h=0.05 -> 0.025 is " + sci(order2));

    IntegrateOptions io;
    io.tol = 1e-10;
    io.project_first_integral = true;
    const Orbit orb = integrate({0.0, -1.0}, {-10.0, 10.0}, io);
    double worst = 0.0;
    for (int k = 0; k <= 2000; ++k) {
        const double t = -10.0 + 0.01 * k;
        worst = std::max(worst,
                         std::abs(orb.eval(t).v - soliton_cylinder(sol, t)));
    }
    out.require(worst <= 1e-8, "connecting orbit deviates from the closed "
                               "form by " +
                                   sci(worst) + " (> 1e-08)");
    if (out.pass) {
        out.note("residual orders " + sci(order1) + ", " + sci(order2) +
                 " (target 2 +- 0.1); connecting-orbit max deviation " +
                 sci(worst) + " on |t| <= 10 (<= 1e-08)");
    }
    return out;
}

// --- energy -----------------------------------------------------------------

Outcome check_energy_scale_invariance(const CheckOptions&) {
    Outcome out;
    const double target = 16.0 * kPi / 3.0;
    const std::array<double, 3> scales{0.5, 1.0, 2.0};
    std::array<double, 3> e{};
    for (std::size_t k = 0; k < scales.size(); ++k) {
        const double la = std::log(scales[k]);
        const RadialProfile p =
            soliton_profile({scales[k], +1}, la - 10.0, la + 10.0, 200001);
        const EnergyValue ev = energy_whole_line(p);
        out.require(ev.finite, "soliton energy flagged non-finite at a = " +
                                   sci(scales[k]));
        e[k] = ev.value;
        out.require(std::abs(e[k] - target) <= 1e-6,
                    "energy at a = " + sci(scales[k]) + " off 16*pi/3 by " +
                        sci(std::abs(e[k] - target)));
    }
    double pairwise = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            pairwise = std::max(pairwise, std::abs(e[i] - e[j]));
        }
    }
    out.require(pairwise <= 1e-8,
                "energies differ across scales by " + sci(pairwise));
    if (out.pass) {
        out.note("max |E - 16*pi/3| = " +
                 sci(std::max({std::abs(e[0] - target), std::abs(e[1] - target),
                               std::abs(e[2] - target)})) +
                 " (<= 1e-06), pairwise spread " + sci(pairwise) +
                 " (<= 1e-08)");
    }
    return out;
}

// --- taxonomy ----------------------------------------------------------------

Outcome check_taxonomy(const CheckOptions&) {
    Outcome out;
    // Low-discrepancy plane fill: x_n = frac(1/2 + n/rho), y_n =
    // frac(1/2 + n/rho^2) with rho the plastic number.
    const double a1 = 0.7548776662466927;
    const double a2 = 0.5698402909980532;
    int counts[5] = {0, 0, 0, 0, 0};
    IntegrateOptions io;
    io.tol = 1e-10;
    for (int n = 1; n <= 1000 && out.pass; ++n) {
        const double x = std::fmod(0.5 + n * a1, 1.0);
        const double y = std::fmod(0.5 + n * a2, 1.0);
        const PhasePoint s{-2.0 + 4.0 * x, -2.0 + 4.0 * y};
        const Classification cls = classify_initial(s);
        const std::string at = " at (" + sci(s.v) + ", " + sci(s.vt) + ")";
        if (cls.is<TrivialZero>()) {
            ++counts[0];
            const Orbit orb = integrate(s, {0.0, 20.0}, io);
            double mx = 0.0;
            for (const PhasePoint& p : orb.y) mx = std::max(mx, std::abs(p.v));
            out.require(!orb.escaped && mx <= 1e-3, "zero state moved" + at);
        } else if (cls.is<EquilibriumState>()) {
            ++counts[1];
            const int sg = cls.as<EquilibriumState>().sign;
            const Orbit orb = integrate(s, {0.0, 20.0}, io);
            double mx = 0.0;
            for (const PhasePoint& p : orb.y) mx = std::max(mx, std::abs(p.v - sg));
            out.require(!orb.escaped && mx <= 1e-3, "equilibrium moved" + at);
        } else if (cls.is<SolitonParams>()) {
            ++counts[2];
            const SolitonParams sp = cls.as<SolitonParams>();
            IntegrateOptions pio = io;
            pio.project_first_integral = true;
            const double end = std::abs(std::log(sp.a)) + 25.0;
            const Orbit orb = integrate(s, {0.0, end}, pio);
            out.require(!orb.escaped &&
                            std::abs(orb.eval(end).v + sp.sign) <= 1e-3,
                        "connecting orbit did not saturate" + at);
        } else if (cls.is<PeriodicOrbit>()) {
            ++counts[3];
            const PeriodicOrbit po = cls.as<PeriodicOrbit>();
            const Orbit orb =
                integrate(s, {0.0, std::max(40.0, 2.7 * po.period)}, io);
            out.require(!orb.escaped, "periodic orbit escaped" + at);
            if (orb.escaped) continue;
            const std::optional<double> tode = detect_period(orb);
            out.require(tode.has_value(), "no period detected" + at);
            if (tode) {
                out.require(std::abs(*tode - po.period) / po.period <= 1e-6,
                            "period mismatch " +
                                sci(std::abs(*tode - po.period) / po.period) + at);
            }
            double mx = 0.0;
            for (const PhasePoint& p : orb.y) mx = std::max(mx, std::abs(p.v));
            out.require(mx <= po.amplitude + 1e-6,
                        "samples exceed the amplitude" + at);
        } else {
            ++counts[4];
            const Orbit orb = integrate(s, {0.0, 200.0}, io);
            out.require(orb.escaped, "state classified unbounded stayed bounded" + at);
        }
    }
    if (out.pass) {
        out.note("1000/1000 agree (zero " + std::to_string(counts[0]) +
                 ", equilibrium " + std::to_string(counts[1]) + ", connecting " +
                 std::to_string(counts[2]) + ", periodic " +
                 std::to_string(counts[3]) + ", unbounded " +
                 std::to_string(counts[4]) + ")");
    }
    return out;
}

// --- round-trips --------------------------------------------------------------

Outcome check_roundtrip(const CheckOptions&) {
    Outcome out;
    const double ln2 = std::log(2.0);
    const RadialProfile p = soliton_profile({2.0, +1}, ln2 - 7.0, ln2 + 7.0, 1401);
    {
        const Classification cls = classify_profile(p);
        if (!cls.is<SolitonParams>()) {
            out.require(false, "sampled soliton not recognized");
        } else {
            const SolitonParams sp = cls.as<SolitonParams>();
            out.require(std::abs(sp.a - 2.0) <= 1e-6,
                        "recovered a = " + sci(sp.a) + " (want 2 within 1e-06)");
            out.require(sp.sign == +1, "recovered wrong orientation");
        }
    }
    {
        const Classification cls = classify_profile(kelvin(p));
        if (!cls.is<SolitonParams>()) {
            out.require(false, "inverted soliton not recognized");
        } else {
            const SolitonParams sp = cls.as<SolitonParams>();
            out.require(std::abs(sp.a - 0.5) <= 1e-6,
                        "inversion gave a = " + sci(sp.a) + " (want 1/2)");
            out.require(sp.sign == -1, "inversion kept the orientation");
        }
    }
    {
        IntegrateOptions io;
        io.tol = 1e-12;
        const Orbit orb = integrate({0.5, 0.0}, {-7.5, 7.5}, io);
        const int n = 1401;
        std::vector<double> t(n), v(n);
        for (int k = 0; k < n; ++k) {
            t[k] = -7.0 + 0.01 * k;
            v[k] = orb.eval(t[k]).v;
        }
        const RadialProfile pp = profile_from_cylinder(t, v);
        const Classification cls = classify_profile(pp);
        if (!cls.is<PeriodicOrbit>()) {
            out.require(false, "sampled periodic orbit not recognized");
        } else {
            const PeriodicOrbit po = cls.as<PeriodicOrbit>();
            const double tref = period_integral(0.5).period;
            out.require(std::abs(po.amplitude - 0.5) <= 1e-6,
                        "amplitude " + sci(po.amplitude) + " (want 0.5)");
            out.require(std::abs(po.period - tref) / tref <= 1e-6,
                        "period off by " +
                            sci(std::abs(po.period - tref) / tref) + " relative");
        }
    }
    if (out.pass) {
        out.note("soliton, inverted soliton, and periodic samples all "
                 "recover their parameters within 1e-06");
    }
    return out;
}

// --- relaxation fixtures ---------------------------------------------------

struct RigidityFixture {
    CylinderField field;
    RelaxReport report;
    double h = 0.0;    // max grid spacing
    double tol = 0.0;  // relaxation tolerance
};

const RigidityFixture& rigidity_fixture(bool fast) {
    static std::optional<RigidityFixture> cache[2];
    std::optional<RigidityFixture>& slot = cache[fast ? 1 : 0];
    if (!slot) {
        const int nt = fast ? 128 : 256;
        const int nth = fast ? 32 : 64;
        const CylinderField init =
            field_perturbed_soliton({1.0, +1}, 0.1, -8.0, 8.0, nt, nth);
        RelaxOptions ro;
        ro.tol = 1e-8;
        ro.max_steps = 400000;
        auto [field, report] = relax(init, ro);
        const double h = std::max(field.h_t(), field.h_theta());
        slot = RigidityFixture{std::move(field), report, h, ro.tol};
    }
    return *slot;
}

Outcome check_rigidity(const CheckOptions& opts) {
    Outcome out;
    const RigidityFixture& fx = rigidity_fixture(opts.fast);
    out.require(fx.report.converged, "relaxation did not converge in " +
                                         std::to_string(fx.report.steps) +
                                         " steps");
    out.require(fx.report.final_residual <= 1e-8,
                "final residual " + sci(fx.report.final_residual));
    out.require(fx.report.anisotropy <= 1e-6,
                "theta dependence survived: anisotropy " +
                    sci(fx.report.anisotropy));
    out.require(fx.report.max_abs_v <= 1.0 + 1e-12,
                "|v| reached " + sci(fx.report.max_abs_v) +
                    ", beyond 1 + 1e-12");
    if (out.pass) {
        out.note(std::to_string(fx.report.steps) + " steps on " +
                 std::to_string(fx.field.n_t) + "x" +
                 std::to_string(fx.field.n_theta) + ": residual " +
                 sci(fx.report.final_residual) + " (<= 1e-08), anisotropy " +
                 sci(fx.report.anisotropy) + " (<= 1e-06), max |v| = " +
                 sci(fx.report.max_abs_v) + " (<= 1 + 1e-12)");
    }
    return out;
}

Outcome check_horizontal(const CheckOptions& opts) {
    Outcome out;
    const RigidityFixture& fx = rigidity_fixture(opts.fast);
    out.require(fx.report.converged, "relaxation fixture did not converge");
    const std::vector<double> h = horizontal_identity(fx.field);
    double mean = 0.0;
    for (double x : h) mean += x;
    mean /= static_cast<double>(h.size());
    double var = 0.0;
    for (double x : h) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / static_cast<double>(h.size()));
    const double bound = 50.0 * (fx.h * fx.h + fx.tol);
    out.require(sd <= bound, "H(t) spread " + sci(sd) + " exceeds " + sci(bound));

    bool any_saturated = false;
    double worst = 0.0;
    for (int i = 1; i < fx.field.n_t - 1; ++i) {
        double row_min = std::abs(fx.field.at(i, 0));
        for (int j = 1; j < fx.field.n_theta; ++j) {
            row_min = std::min(row_min, std::abs(fx.field.at(i, j)));
        }
        if (row_min > 0.999) {
            any_saturated = true;
            worst = std::max(worst, std::abs(h[static_cast<std::size_t>(i) - 1] + kPi));
        }
    }
    out.require(any_saturated, "no saturated rows to test against -pi");
    out.require(worst <= bound,
                "saturated rows off -pi by " + sci(worst) + " (> " + sci(bound) + ")");
    if (out.pass) {
        out.note("stddev(H) = " + sci(sd) + ", saturated rows |H + pi| <= " +
                 sci(worst) + " (bound " + sci(bound) + ")");
    }
    return out;
}

Outcome check_zero_trap(const CheckOptions& opts) {
    Outcome out;
    const int nt = opts.fast ? 33 : 65;
    const int nth = opts.fast ? 8 : 16;
    double worst = 0.0;
    long worst_steps = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const CylinderField init = field_random(0.3, seed, -1.0, 1.0, nt, nth);
        RelaxOptions ro;
        ro.tol = 1e-9;
        ro.max_steps = 2000000;
        auto [field, report] = relax(init, ro);
        out.require(report.converged,
                    "seed " + std::to_string(seed) + " did not converge");
        double mx = 0.0;
        for (double x : field.v) mx = std::max(mx, std::abs(x));
        out.require(mx <= 1e-8, "seed " + std::to_string(seed) +
                                    " settled at max |v| = " + sci(mx));
        worst = std::max(worst, mx);
        worst_steps = std::max(worst_steps, report.steps);
    }
    if (out.pass) {
        out.note("5 seeds on [-1,1]x S^1 (" + std::to_string(nt) + "x" +
                 std::to_string(nth) + "): worst final max |v| = " + sci(worst) +
                 " (<= 1e-08), worst steps " + std::to_string(worst_steps));
    }
    return out;
}

Outcome check_moving_plane(const CheckOptions&) {
    Outcome out;
    const double M = 0.5;
    const double T = period_integral(M).period;
    IntegrateOptions io;
    io.tol = 1e-12;
    const Orbit orb = integrate({M, 0.0}, {0.0, T}, io);
    CylinderField pf;
    pf.t_min = 0.0;
    pf.t_max = T;
    pf.n_t = 129;
    pf.n_theta = 8;
    pf.v.assign(static_cast<std::size_t>(pf.n_t) * pf.n_theta, 0.0);
    for (int i = 0; i < pf.n_t; ++i) {
        const double val = orb.eval(pf.t(i)).v;
        for (int j = 0; j < pf.n_theta; ++j) pf.at(i, j) = val;
    }
    const MovingPlaneReport rp = moving_plane_check(pf);
    out.require(rp.best_lambda.has_value(), "no reflection center reported");
    if (rp.best_lambda) {
        out.require(std::abs(*rp.best_lambda - 0.5 * T) <= pf.h_t(),
                    "center " + sci(*rp.best_lambda) + " not at the half-period " +
                        sci(0.5 * T));
    }
    out.require(rp.reflection_defect <= 1e-6,
                "periodic field reflection defect " + sci(rp.reflection_defect));
    out.require(rp.min_vt < 0.0, "periodic field reported monotone");

    const CylinderField sf = field_soliton({1.0, -1}, -8.0, 8.0, 257, 8);
    const MovingPlaneReport rs = moving_plane_check(sf);
    out.require(!rs.degenerate, "soliton field flagged degenerate");
    out.require(rs.min_vt > 0.0,
                "soliton field min v_t = " + sci(rs.min_vt) + " (want > 0)");
    out.require(rs.reflection_defect >= 1e-2,
                "soliton field produced a small-defect center: " +
                    sci(rs.reflection_defect));
    if (out.pass) {
        out.note("periodic field: defect " + sci(rp.reflection_defect) +
                 " at center " + sci(rp.best_lambda.value_or(0.0)) +
                 " (half-period " + sci(0.5 * T) + "); monotone field: min v_t = " +
                 sci(rs.min_vt) + " > 0, best defect " + sci(rs.reflection_defect));
    }
    return out;
}

struct CheckSpec {
    const char* name;
    Outcome (*fn)(const CheckOptions&);
    double budget_seconds;  // 0 = none
};

const std::array<CheckSpec, 11>& specs() {
    static const std::array<CheckSpec, 11> kSpecs{{
        {"period-triple-agreement", &check_period_triple, 10.0},
        {"period-small-amplitude", &check_period_small_amplitude, 0.0},
        {"first-integral-drift", &check_drift, 0.0},
        {"soliton-exactness", &check_soliton_exactness, 0.0},
        {"energy-scale-invariance", &check_energy_scale_invariance, 0.0},
        {"taxonomy-consistency", &check_taxonomy, 60.0},
        {"classification-roundtrip", &check_roundtrip, 0.0},
        {"cylinder-rigidity", &check_rigidity, 300.0},
        {"horizontal-identity", &check_horizontal, 0.0},
        {"zero-trap", &check_zero_trap, 0.0},
        {"moving-plane-dichotomy", &check_moving_plane, 0.0},
    }};
    return kSpecs;
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const CheckSpec& s : specs()) v.emplace_back(s.name);
        return v;
    }();
    return names;
}

CheckResult run_check(const std::string& name, const CheckOptions& opts) {
    for (const CheckSpec& s : specs()) {
        if (name != s.name) continue;
        CheckResult res;
        res.name = name;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = s.fn(opts);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        if (s.budget_seconds > 0.0 && res.seconds > s.budget_seconds) {
            out.pass = false;
            out.detail += (out.detail.empty() ? "" : "; ");
            out.detail += "runtime " + sci(res.seconds) + " s over budget " +
                          sci(s.budget_seconds) + " s";
        }
        res.pass = out.pass;
        res.detail = out.detail;
        return res;
    }
    throw DomainError("unknown check: " + name);
}

std::vector<CheckResult> run_checks(const std::string& filter,
                                    const CheckOptions& opts) {
    std::vector<CheckResult> out;
    for (const CheckSpec& s : specs()) {
        if (!filter.empty() &&
            std::string_view(s.name).find(filter) == std::string_view::npos) {
            continue;
        }
        out.push_back(run_check(s.name, opts));
    }
    return out;
}

}  // namespace ym
