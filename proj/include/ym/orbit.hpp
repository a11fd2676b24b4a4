#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "ym/errors.hpp"

namespace ym {

// Point in the phase plane of the reduced equation v_tt = -2v(1 - v^2).
struct PhasePoint {
    double v = 0.0;
    double vt = 0.0;
};

// Conserved along exact orbits: c = v_t^2 - (v^2 - 1)^2.
double first_integral(PhasePoint p);

// Oscillation amplitude M = sqrt(1 - sqrt(-c)) for c in (-1, 0);
// inverse relation c = -(1 - M^2)^2.
double amplitude_from_c(double c);

enum class EventKind { vt_zero, v_zero, escape };

struct OrbitEvent {
    double t = 0.0;
    EventKind kind = EventKind::vt_zero;
    PhasePoint state;
    // Sign of the crossed quantity's time derivative at the event
    // (+1 rising, -1 falling); escape events use the sign of v.
    int direction = 0;
};

// One accepted integrator step, endpoints plus derivatives; values in
// between come from the cubic Hermite interpolant (O(h^4), well below the
// integrator tolerances used here).
struct DenseSegment {
    double t0 = 0.0, t1 = 0.0; // t0 < t1
    PhasePoint y0, y1;
    PhasePoint f0, f1;
};

struct Orbit {
    double t_start = 0.0;  // where the initial state was handed in
    PhasePoint start;
    std::vector<double> t; // ascending accepted-step times
    std::vector<PhasePoint> y;
    std::vector<double> c;          // first integral recomputed per sample
    std::vector<OrbitEvent> events; // sorted by time
    std::vector<DenseSegment> segments;
    double tol = 0.0;             // tolerance the orbit was integrated at
    double drift = 0.0;           // max |c(t) - c(t_start)| over samples
    double drift_tolerance = 0.0; // declared bound for .drift
    bool escaped = false;         // an |v| > 3 event truncated the orbit

    double t_min() const { return t.front(); }
    double t_max() const { return t.back(); }
    PhasePoint eval(double at) const; // dense output inside [t_min, t_max]
};

struct IntegrateOptions {
    double tol = 1e-10;
    // Re-impose the start's first-integral level after every accepted step
    // by adjusting |v_t|. Stabilizes tracking along the c = 0 separatrix
    // where raw forward error is amplified exponentially by the saddle.
    // Off by default so that .drift stays an honest error diagnostic.
    bool project_first_integral = false;
};

// Dormand-Prince 5(4) with error-per-unit-step control: local error per
// step <= tol * h * scale, so accumulated drift stays near tol * span.
// The start state sits at t = 0; t_span = (a, b) with a <= 0 <= b, a < b;
// a backward and a forward pass are merged. |v| > 3 aborts the affected
// pass with an escape event (orbit truncated there, .escaped set).
// Step-size underflow throws IntegrationError carrying the partial orbit.
Orbit integrate(PhasePoint start, std::pair<double, double> t_span,
                IntegrateOptions opts = {});

struct IntegrationError : NumericError {
    Orbit partial;
    IntegrationError(const std::string& msg, Orbit orbit)
        : NumericError(msg), partial(std::move(orbit)) {}
};

// Period from v_t zero crossings: mean gap between consecutive crossings of
// the SAME direction (alternate zeros; adjacent ones give T/2 and are noise
// sensitive). Exact equilibria return nullopt. Fewer than 3 v_t crossings:
// DomainError (span too short to certify a period).
std::optional<double> detect_period(const Orbit& orbit);

struct ReflectionReport {
    double even_defect = 0.0; // max |v(-t) - v(t)| over the common window
    std::optional<double> min_defect; // max |v(2 t1 - t) - v(t)|
    std::optional<double> t_first_min; // first minimum time t1 > 0
    bool symmetric_even = false; // defect <= 100 * tol
    bool symmetric_min = false;
};

// Symmetry identities of bounded orbits: evenness about t = 0 (when started
// at an extremum) and reflection about the first minimum time t1. With
// require_extremum_start the precondition |v_t(0)| <= 10*tol is enforced;
// pass false to probe arbitrary orbits (e.g. to show the heteroclinic is
// NOT even about 0). Orbit must straddle t = 0.
ReflectionReport reflection_checks(const Orbit& orbit,
                                   bool require_extremum_start = true);

} // namespace ym
