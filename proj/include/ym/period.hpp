#pragma once

namespace ym {

enum class PeriodMethod { substitution_quadrature, elliptic_agm };

struct PeriodResult {
    double m_amplitude = 0.0; // M in (0,1)
    double period = 0.0;      // T > pi*sqrt(2)
    PeriodMethod method = PeriodMethod::substitution_quadrature;
    double est_error = 0.0;
};

// Complete elliptic integral of the first kind in the PARAMETER convention,
//   K(m) = integral_0^{pi/2} dphi / sqrt(1 - m sin^2 phi),  m = k^2,
// by arithmetic-geometric mean iteration (terminates when successive means
// agree to 1e-16 relative). Pass m, not the modulus k.
double elliptic_K(double m);

// Period of the bounded oscillation with amplitude M in (0,1),
//   T = 2 * integral_{-M}^{M} dtheta / sqrt((2 - M^2 - theta^2)(M^2 - theta^2)).
// The substitution theta = M sin phi removes both inverse-square-root
// endpoints, leaving the analytic integrand 2 / sqrt(2 - M^2 - M^2 sin^2 phi)
// over [-pi/2, pi/2]; evaluated by Gauss-Legendre with node doubling until
// successive values differ by < 1e-12 (est_error = last difference).
PeriodResult period_integral(double M);

// Independent oracle for the same quantity: T = 4 K(m) / sqrt(2 - M^2) with
// parameter m = M^2 / (2 - M^2).
PeriodResult period_agm(double M);

} // namespace ym
