#include "ym/orbit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ym {

double first_integral(PhasePoint p) {
    const double w = p.v * p.v - 1.0;
    return p.vt * p.vt - w * w;
}

double amplitude_from_c(double c) {
    if (!(c > -1.0) || !(c < 0.0))
        throw DomainError("amplitude_from_c: c must lie in (-1, 0)");
    return std::sqrt(1.0 - std::sqrt(-c));
}

namespace {

constexpr double kEscape = 3.0;

using State = std::array<double, 2>; // {v, vt}

inline State rhs(const State& s) {
    return {s[1], 2.0 * s[0] * (s[0] * s[0] - 1.0)};
}

inline PhasePoint to_point(const State& s) { return {s[0], s[1]}; }

struct StepOut {
    State y5;
    State k7;
    double err; // scaled RMS of the embedded 4th-order estimate
};

// Dormand-Prince 5(4); k1 = f(y) comes in via FSAL, k7 = f(y5) goes out.
StepOut dopri_step(const State& y, const State& k1, double h, double tol) {
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                     a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                     a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                     a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0,
                     b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                     b6 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                     e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                     e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    State tmp, k2, k3, k4, k5, k6;
    for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * (a21 * k1[i]);
    k2 = rhs(tmp);
    for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(tmp);
    for (int i = 0; i < 2; ++i)
        tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(tmp);
    for (int i = 0; i < 2; ++i)
        tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(tmp);
    for (int i = 0; i < 2; ++i)
        tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                             a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(tmp);

    StepOut out;
    for (int i = 0; i < 2; ++i)
        out.y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                b5 * k5[i] + b6 * k6[i]);
    out.k7 = rhs(out.y5);

    double acc = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double est = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                e5 * k5[i] + e6 * k6[i] + e7 * out.k7[i]);
        const double sc =
            tol * (1.0 + std::max(std::abs(y[i]), std::abs(out.y5[i])));
        const double q = est / sc;
        acc += q * q;
    }
    out.err = std::sqrt(0.5 * acc);
    return out;
}

PhasePoint hermite_eval(const DenseSegment& s, double at) {
    const double h = s.t1 - s.t0;
    const double x = (at - s.t0) / h;
    const double om = 1.0 - x;
    const double h00 = (1.0 + 2.0 * x) * om * om;
    const double h10 = x * om * om;
    const double h01 = x * x * (3.0 - 2.0 * x);
    const double h11 = x * x * (x - 1.0);
    PhasePoint out;
    out.v = h00 * s.y0.v + h * h10 * s.f0.v + h01 * s.y1.v + h * h11 * s.f1.v;
    out.vt =
        h00 * s.y0.vt + h * h10 * s.f0.vt + h01 * s.y1.vt + h * h11 * s.f1.vt;
    return out;
}

// Bisect g (a component of the dense state, or |v| - 3) to ~1e-12 in time.
template <typename G>
double bisect_time(const DenseSegment& seg, double lo, double hi, G g) {
    double glo = g(hermite_eval(seg, lo));
    for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(mid))) break;
        const double gm = g(hermite_eval(seg, mid));
        if ((glo < 0.0) == (gm < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

int vt_zero_direction(PhasePoint p) {
    const double a = 2.0 * p.v * (p.v * p.v - 1.0);
    return (a > 0.0) ? 1 : (a < 0.0 ? -1 : 0);
}

int v_zero_direction(PhasePoint p) {
    return (p.vt > 0.0) ? 1 : (p.vt < 0.0 ? -1 : 0);
}

struct PassResult {
    std::vector<double> t; // in traversal order, excludes the t = 0 start
    std::vector<State> y;
    std::vector<DenseSegment> segments; // each normalized t0 < t1
    std::vector<OrbitEvent> events;
    bool escaped = false;
    bool underflow = false;
};

// Scan one accepted segment for events. traversal_dir = +1 if the pass
// walks the segment left to right. If an escape is found the segment is
// truncated in place at the crossing and true is returned.
bool scan_segment(DenseSegment& seg, double traversal_dir,
                  std::vector<OrbitEvent>& events) {
    constexpr int K = 8;
    std::array<double, K + 1> ts;
    std::array<PhasePoint, K + 1> ps;
    for (int k = 0; k <= K; ++k) {
        ts[k] = seg.t0 + (seg.t1 - seg.t0) * (static_cast<double>(k) / K);
        ps[k] = hermite_eval(seg, ts[k]);
    }
    ps[0] = seg.y0; // endpoints exact
    ps[K] = seg.y1;

    // Escape first: earliest |v| >= 3 along the traversal wins.
    bool escaped = false;
    double t_esc = 0.0;
    if (traversal_dir > 0) {
        for (int k = 1; k <= K; ++k) {
            if (std::abs(ps[k].v) >= kEscape) {
                t_esc = bisect_time(seg, ts[k - 1], ts[k], [](PhasePoint p) {
                    return std::abs(p.v) - kEscape;
                });
                escaped = true;
                break;
            }
        }
    } else {
        for (int k = K - 1; k >= 0; --k) {
            if (std::abs(ps[k].v) >= kEscape) {
                t_esc = bisect_time(seg, ts[k + 1], ts[k], [](PhasePoint p) {
                    return std::abs(p.v) - kEscape;
                });
                escaped = true;
                break;
            }
        }
    }
    double scan_lo = seg.t0, scan_hi = seg.t1;
    if (escaped) {
        const PhasePoint pe = hermite_eval(seg, t_esc);
        OrbitEvent ev;
        ev.t = t_esc;
        ev.kind = EventKind::escape;
        ev.state = pe;
        ev.direction = pe.v > 0.0 ? 1 : -1;
        events.push_back(ev);
        if (traversal_dir > 0) {
            seg.t1 = t_esc;
            seg.y1 = pe;
            seg.f1 = to_point(rhs({pe.v, pe.vt}));
            scan_hi = t_esc;
        } else {
            seg.t0 = t_esc;
            seg.y0 = pe;
            seg.f0 = to_point(rhs({pe.v, pe.vt}));
            scan_lo = t_esc;
        }
    }

    // Zero crossings of v_t and v on the kept range.
    for (int kind = 0; kind < 2; ++kind) {
        const auto comp = [kind](PhasePoint p) { return kind == 0 ? p.vt : p.v; };
        double a = scan_lo;
        double ga = comp(hermite_eval(seg, a));
        if (a == seg.t0) ga = comp(seg.y0);
        for (int k = 1; k <= K; ++k) {
            const double b = scan_lo + (scan_hi - scan_lo) * (static_cast<double>(k) / K);
            PhasePoint pb = hermite_eval(seg, b);
            if (b == seg.t1) pb = seg.y1;
            const double gb = comp(pb);
            double t_ev = 0.0;
            bool hit = false;
            if (gb == 0.0 && ga != 0.0) {
                t_ev = b;
                hit = true;
            } else if (ga != 0.0 && gb != 0.0 && (ga < 0.0) != (gb < 0.0)) {
                t_ev = bisect_time(seg, a, b, comp);
                hit = true;
            }
            if (hit) {
                OrbitEvent ev;
                ev.t = t_ev;
                ev.kind = kind == 0 ? EventKind::vt_zero : EventKind::v_zero;
                ev.state = hermite_eval(seg, t_ev);
                ev.direction = kind == 0 ? vt_zero_direction(ev.state)
                                         : v_zero_direction(ev.state);
                events.push_back(ev);
            }
            a = b;
            ga = gb;
        }
    }
    return escaped;
}

PassResult run_pass(const State& start, double t_target,
                    const IntegrateOptions& opts, double c0) {
    PassResult out;
    const double dir = (t_target > 0.0) ? 1.0 : -1.0;
    const double h_max = 0.5;
    double t = 0.0;
    State y = start;
    State k1 = rhs(y);
    double h = dir * std::min({0.01, h_max, 0.5 * std::abs(t_target)});
    long iterations = 0;

    while (dir * (t_target - t) > 0.0) {
        if (++iterations > 20'000'000) {
            out.underflow = true;
            break;
        }
        bool final_step = false;
        if (std::abs(h) >= std::abs(t_target - t)) {
            h = t_target - t;
            final_step = true;
        } else if (std::abs(h) > h_max) {
            h = dir * h_max;
        }
        const StepOut st = dopri_step(y, k1, h, opts.tol);
        if (!(st.err <= std::abs(h))) { // error per unit step above tol
            double fac = 0.1;
            if (std::isfinite(st.err) && st.err > 0.0)
                fac = std::max(0.1, 0.9 * std::pow(std::abs(h) / st.err, 0.25));
            h *= std::min(fac, 0.9);
            if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
                out.underflow = true;
                break;
            }
            continue;
        }
        const double t_new = final_step ? t_target : t + h;
        State y_new = st.y5;
        State k7 = st.k7;
        if (opts.project_first_integral) {
            const double w = y_new[0] * y_new[0] - 1.0;
            const double s2 = w * w + c0;
            if (s2 >= 0.0 && y_new[1] != 0.0) {
                y_new[1] = std::copysign(std::sqrt(s2), y_new[1]);
                k7 = rhs(y_new);
            }
        }

        DenseSegment seg;
        if (h > 0.0) {
            seg.t0 = t;
            seg.t1 = t_new;
            seg.y0 = to_point(y);
            seg.y1 = to_point(y_new);
            seg.f0 = to_point(k1);
            seg.f1 = to_point(k7);
        } else {
            seg.t0 = t_new;
            seg.t1 = t;
            seg.y0 = to_point(y_new);
            seg.y1 = to_point(y);
            seg.f0 = to_point(k7);
            seg.f1 = to_point(k1);
        }
        const bool escaped = scan_segment(seg, dir, out.events);
        if (escaped) {
            const PhasePoint pe = (dir > 0.0) ? seg.y1 : seg.y0;
            out.segments.push_back(seg);
            out.t.push_back(dir > 0.0 ? seg.t1 : seg.t0);
            out.y.push_back({pe.v, pe.vt});
            out.escaped = true;
            break;
        }
        out.segments.push_back(seg);
        out.t.push_back(t_new);
        out.y.push_back(y_new);

        double fac = 5.0;
        if (st.err > 0.0)
            fac = std::clamp(0.9 * std::pow(std::abs(h) / st.err, 0.25), 0.2, 5.0);
        t = t_new;
        y = y_new;
        k1 = k7;
        h *= fac;
    }
    return out;
}

} // namespace

PhasePoint Orbit::eval(double at) const {
    if (segments.empty()) {
        if (std::abs(at - t_start) <= 1e-12) return start;
        throw DomainError("orbit eval: no dense segments");
    }
    const double slack = 1e-9 * std::max(1.0, std::abs(at));
    if (at < segments.front().t0 - slack || at > segments.back().t1 + slack)
        throw DomainError("orbit eval: time outside integrated range");
    // Last segment whose t0 <= at.
    auto it = std::upper_bound(
        segments.begin(), segments.end(), at,
        [](double value, const DenseSegment& s) { return value < s.t0; });
    if (it != segments.begin()) --it;
    const double clamped = std::clamp(at, it->t0, it->t1);
    return hermite_eval(*it, clamped);
}

Orbit integrate(PhasePoint start, std::pair<double, double> t_span,
                IntegrateOptions opts) {
    if (!std::isfinite(start.v) || !std::isfinite(start.vt))
        throw DomainError("integrate: start state must be finite");
    if (!(opts.tol > 0.0))
        throw DomainError("integrate: tol must be > 0");
    const double ta = t_span.first, tb = t_span.second;
    if (!(ta < tb))
        throw DomainError("integrate: t_span must be nondegenerate");
    if (ta > 0.0 || tb < 0.0)
        throw DomainError("integrate: start sits at t = 0, span must contain it");

    Orbit orbit;
    orbit.t_start = 0.0;
    orbit.start = start;
    orbit.tol = opts.tol;
    const double c0 = first_integral(start);
    // advisory scale, not enforced: escaping orbits carry |c| >> 1
    orbit.drift_tolerance =
        20.0 * opts.tol * std::max(1.0, tb - ta) * std::max(1.0, std::abs(c0));

    if (std::abs(start.v) > kEscape) {
        orbit.t = {0.0};
        orbit.y = {start};
        orbit.c = {c0};
        orbit.events.push_back(
            {0.0, EventKind::escape, start, start.v > 0.0 ? 1 : -1});
        orbit.escaped = true;
        return orbit;
    }

    const State y0 = {start.v, start.vt};
    PassResult back, fwd;
    if (ta < 0.0) back = run_pass(y0, ta, opts, c0);
    if (tb > 0.0) fwd = run_pass(y0, tb, opts, c0);

    const std::size_t n = back.t.size() + 1 + fwd.t.size();
    orbit.t.reserve(n);
    orbit.y.reserve(n);
    for (std::size_t i = back.t.size(); i-- > 0;) {
        orbit.t.push_back(back.t[i]);
        orbit.y.push_back(to_point(back.y[i]));
    }
    orbit.t.push_back(0.0);
    orbit.y.push_back(start);
    for (std::size_t i = 0; i < fwd.t.size(); ++i) {
        orbit.t.push_back(fwd.t[i]);
        orbit.y.push_back(to_point(fwd.y[i]));
    }
    orbit.segments.reserve(back.segments.size() + fwd.segments.size());
    for (std::size_t i = back.segments.size(); i-- > 0;)
        orbit.segments.push_back(back.segments[i]);
    for (const auto& s : fwd.segments) orbit.segments.push_back(s);

    orbit.events = std::move(back.events);
    orbit.events.insert(orbit.events.end(), fwd.events.begin(),
                        fwd.events.end());
    std::sort(orbit.events.begin(), orbit.events.end(),
              [](const OrbitEvent& a, const OrbitEvent& b) { return a.t < b.t; });

    orbit.c.resize(orbit.y.size());
    double drift = 0.0;
    for (std::size_t i = 0; i < orbit.y.size(); ++i) {
        orbit.c[i] = first_integral(orbit.y[i]);
        drift = std::max(drift, std::abs(orbit.c[i] - c0));
    }
    orbit.drift = drift;
    orbit.escaped = back.escaped || fwd.escaped;

    if (back.underflow || fwd.underflow)
        throw IntegrationError("integrate: step size underflow", std::move(orbit));
    return orbit;
}

std::optional<double> detect_period(const Orbit& orbit) {
    const PhasePoint s = orbit.start;
    // Exact equilibria produce no crossings at all; report none rather than
    // an insufficient-span error.
    if (s.vt == 0.0 && 2.0 * s.v * (s.v * s.v - 1.0) == 0.0)
        return std::nullopt;
    std::vector<double> up, down;
    for (const auto& ev : orbit.events) {
        if (ev.kind != EventKind::vt_zero || ev.direction == 0) continue;
        (ev.direction > 0 ? up : down).push_back(ev.t);
    }
    if (up.size() + down.size() < 3)
        throw DomainError(
            "detect_period: insufficient span (fewer than 3 v_t zero crossings)");
    double sum = 0.0;
    int count = 0;
    for (const std::vector<double>* g : {&up, &down}) {
        for (std::size_t i = 0; i + 1 < g->size(); ++i) {
            sum += (*g)[i + 1] - (*g)[i];
            ++count;
        }
    }
    if (count == 0)
        throw DomainError("detect_period: no same-direction crossing pair");
    return sum / count;
}

ReflectionReport reflection_checks(const Orbit& orbit,
                                   bool require_extremum_start) {
    ReflectionReport rep;
    const PhasePoint s = orbit.start;
    if (s.vt == 0.0 && 2.0 * s.v * (s.v * s.v - 1.0) == 0.0) {
        rep.min_defect = 0.0;
        rep.symmetric_even = true;
        rep.symmetric_min = true;
        return rep;
    }
    if (require_extremum_start && std::abs(s.vt) > 10.0 * orbit.tol)
        throw DomainError(
            "reflection_checks: orbit must start at an extremum (v_t(0) = 0)");
    if (!(orbit.t_min() < 0.0 && orbit.t_max() > 0.0))
        throw DomainError("reflection_checks: orbit must straddle t = 0");

    const double threshold = 100.0 * orbit.tol;
    const double tau = std::min(-orbit.t_min(), orbit.t_max());
    double even = 0.0;
    for (std::size_t i = 0; i < orbit.t.size(); ++i) {
        const double ti = orbit.t[i];
        if (!(ti > 0.0) || ti > tau) continue;
        even = std::max(even, std::abs(orbit.eval(-ti).v - orbit.y[i].v));
    }
    rep.even_defect = even;
    rep.symmetric_even = even <= threshold;

    // First minimum after the start: v_t crossing with rising direction.
    std::optional<double> t1;
    for (const auto& ev : orbit.events) {
        if (ev.kind == EventKind::vt_zero && ev.direction > 0 && ev.t > 1e-9) {
            t1 = ev.t;
            break;
        }
    }
    if (t1) {
        const double lo = std::max(orbit.t_min(), 2.0 * *t1 - orbit.t_max());
        const double hi = std::min(orbit.t_max(), 2.0 * *t1 - orbit.t_min());
        double dm = 0.0;
        for (std::size_t i = 0; i < orbit.t.size(); ++i) {
            const double ti = orbit.t[i];
            if (ti < lo || ti > hi) continue;
            dm = std::max(dm,
                          std::abs(orbit.eval(2.0 * *t1 - ti).v - orbit.y[i].v));
        }
        rep.min_defect = dm;
        rep.t_first_min = t1;
        rep.symmetric_min = dm <= threshold;
    }
    return rep;
}

} // namespace ym
