#pragma once
#include <vector>

#include "ym/geometry.hpp"

namespace ym {

// Scale and orientation of the explicit solution family
//   u(r) = sign * (a^2 - r^2) / (a^2 + r^2),
// which on the cylinder reads v(t) = -sign * tanh(t - ln a).
struct SolitonParams {
    double a = 1.0; // > 0
    int sign = +1;  // +1 or -1
};

void validate(const SolitonParams& p);

double soliton_value(const SolitonParams& p, double r);    // r >= 0
double soliton_cylinder(const SolitonParams& p, double t); // any t

// Sampled soliton on the uniform t-grid [t0, t1] with n points.
// origin_value is the sign (the r -> 0 limit of the closed form).
RadialProfile soliton_profile(const SolitonParams& p, double t0, double t1,
                              int n);

// Central-difference residual of the cylinder equation, -v_tt - 2v(1-v^2),
// at the n-2 interior points of the uniform-in-t grid. Second order:
// halving h cuts the max by ~4 on smooth solutions. Evaluating on the
// cylinder avoids the 1/r^2 weight of the radial form.
std::vector<double> pde_residual(const RadialProfile& p);

struct EnergyValue {
    double value = 0.0;  // trapezoid integral over .window
    bool finite = true;  // whole-line verdict; windowed requests report true
    double window[2] = {0.0, 0.0}; // t-range actually integrated
};

// 2*pi * integral over [t0, t1] of (v_t^2 + (v^2 - 1)^2) dt, trapezoid on
// the t-grid nodes inside the window, v_t by central differences (one-sided
// second order at the profile ends). Window endpoints snap to grid nodes.
EnergyValue energy(const RadialProfile& p, double t0, double t1);

// Full-grid integral plus a decay verdict: finite only when the integrand
// falls below 1e-12 at both grid ends. value always carries the windowed
// integral, so an infinite verdict still reports how much the window holds.
EnergyValue energy_whole_line(const RadialProfile& p);

} // namespace ym
