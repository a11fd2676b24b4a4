#pragma once

#include <variant>

#include "ym/closedform.hpp"
#include "ym/geometry.hpp"
#include "ym/orbit.hpp"

namespace ym {

// Taxonomy of bounded stationary states plus the escape branch. Every
// initial condition (v, v_t) lands in exactly one class, decided through
// the conserved quantity c = v_t^2 - (v^2 - 1)^2.
struct TrivialZero {};

struct EquilibriumState {
    int sign = +1;  // v == sign, v_t == 0
};

struct PeriodicOrbit {
    double amplitude = 0.0;  // max |v| along the orbit, in (0, 1)
    double period = 0.0;
    // Time from the classified point to the next maximum of v, in [0, T).
    // Pins the translate of the orbit the point sits on.
    double phase = 0.0;
};

// c > 0, c < -1, or the |v| >= sqrt(2 - M^2) branch at admissible c:
// the trajectory leaves every bounded set (|v| crosses the escape
// threshold in finite time).
struct UnboundedBranch {
    enum class Reason { c_above_zero, c_below_minus_one, outer_band };
    Reason reason = Reason::c_above_zero;
};

struct Classification {
    std::variant<TrivialZero, EquilibriumState, SolitonParams, PeriodicOrbit,
                 UnboundedBranch>
        value;
    double c = 0.0;  // raw first integral the verdict was based on

    template <class T>
    bool is() const {
        return std::holds_alternative<T>(value);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(value);
    }
};

enum class OriginValue { minus_one, zero, plus_one, discontinuous };

// Limit of u(r) as r -> 0+ for the classified state. Bounded classes have
// a genuine limit in {-1, 0, +1}; periodic and unbounded states oscillate
// or blow up and have none.
OriginValue origin_value(const Classification&);

// Classify the state with data (v, v_t) at some cylinder time. eps_c sets
// the snapping width for the c = -1 and c = 0 boundary cases and for the
// pointwise equilibrium test.
Classification classify_initial(PhasePoint p, double eps_c = 1e-9);

// Classify a sampled radial profile. Requires a grid that is uniform in
// t = ln r, spans at least three decades of r, and satisfies the discrete
// equation (interior residual below 100 h^2); otherwise throws
// DomainError. v_t at the anchor is taken by fourth-order differences and
// the snapping width widens to max(eps_c, 50 h^4) to absorb that error.
Classification classify_profile(const RadialProfile&);

}  // namespace ym
