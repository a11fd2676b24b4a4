#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ym/closedform.hpp"
#include "ym/kernels.hpp"

namespace ym {

// Boundary rows (i = 0 and i = n_t - 1) are either held at their
// initialized values (dirichlet) or updated with a mirrored ghost row
// (neumann_zero). The dirichlet `value` records the intended level for
// reporting; the enforced data are the boundary rows themselves.
struct BoundaryCondition {
    enum class Kind { dirichlet, neumann_zero };
    Kind kind = Kind::dirichlet;
    double value = 0.0;

    static BoundaryCondition dirichlet(double v) {
        return {Kind::dirichlet, v};
    }
    static BoundaryCondition neumann() { return {Kind::neumann_zero, 0.0}; }
};

// Samples v(t_i, theta_j) on a truncated cylinder. theta is periodic with
// no duplicated seam column: theta_j = 2 pi j / n_theta, neighbors wrap
// modulo n_theta. Storage is row-major, v[i * n_theta + j].
struct CylinderField {
    double t_min = -8.0;
    double t_max = 8.0;
    int n_t = 0;
    int n_theta = 0;
    std::vector<double> v;
    BoundaryCondition bc_left;
    BoundaryCondition bc_right;

    double h_t() const { return (t_max - t_min) / (n_t - 1); }
    double h_theta() const;
    double t(int i) const { return t_min + i * h_t(); }
    double theta(int j) const;
    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * n_theta + j]; }
    double at(int i, int j) const {
        return v[static_cast<std::size_t>(i) * n_theta + j];
    }
};

void validate(const CylinderField&);

CylinderField field_zero(double t_min, double t_max, int n_t, int n_theta);
// Theta-independent soliton samples; both ends Dirichlet at the sampled
// end values.
CylinderField field_soliton(const SolitonParams&, double t_min, double t_max,
                            int n_t, int n_theta);
// Soliton plus amp * cos(theta) * exp(-(t - ln a)^2 / 2) on interior rows;
// boundary rows stay pure soliton.
CylinderField field_perturbed_soliton(const SolitonParams&, double amp,
                                      double t_min, double t_max, int n_t,
                                      int n_theta);
// Interior rows i.i.d. uniform in [-amp, amp] from a seeded generator
// (identical output for identical seed on every platform); zero Dirichlet
// ends.
CylinderField field_random(double amp, std::uint64_t seed, double t_min,
                           double t_max, int n_t, int n_theta);

struct RelaxOptions {
    double tol = 1e-8;        // stop when max interior residual <= tol
    long max_steps = 1000000;
    double dt_factor = 0.2;   // dt = dt_factor * min(h_t^2, h_theta^2);
                              // values above 0.25 are rejected (explicit
                              // scheme stability)
    int check_every = 64;     // residual test cadence, in steps
    std::optional<KernelBackend> backend;  // default: preferred_backend()
};

struct RelaxReport {
    long steps = 0;
    double final_residual = 0.0;
    double anisotropy = 0.0;   // theta_anisotropy of the final field
    bool converged = false;
    double max_abs_v = 0.0;    // over every iterate, boundaries included
    KernelBackend backend = KernelBackend::scalar;
    double dt = 0.0;
};

// Explicit Euler descent for the equation v_tt + v_theta_theta
// + 2 v (1 - v^2) = 0. Deterministic: single threaded, fixed dt, and the
// kernel backends are bit-identical.
std::pair<CylinderField, RelaxReport> relax(const CylinderField& init,
                                            const RelaxOptions& = {});

// Max over rows of (row max - row min): zero iff the field is a function
// of t alone.
double theta_anisotropy(const CylinderField&);

// The combination H(t) = integral over theta of
//   -v_t^2/2 + v_theta^2/2 - v^2 + v^4/2
// is independent of t for solutions (central differences, interior rows;
// returns n_t - 2 values). Saturated states |v| = 1 give -pi; the zero
// state gives 0.
std::vector<double> horizontal_identity(const CylinderField&);

// phi(t_i) = integral over theta of v^2, all rows.
std::vector<double> phi_profile(const CylinderField&);

// Reflection scan in t: for every admissible center (half-grid
// resolution, requiring at least half the rows to overlap their mirror)
// measure max |v(lambda + s) - v(lambda - s)|; report the best center
// (parabola-refined) and its defect, plus the minimum of v_t for the
// monotonicity branch. A constant field is flagged degenerate (both
// branches vacuous).
struct MovingPlaneReport {
    std::optional<double> best_lambda;
    double reflection_defect = 0.0;
    double min_vt = 0.0;
    bool degenerate = false;
};

MovingPlaneReport moving_plane_check(const CylinderField&);

}  // namespace ym
