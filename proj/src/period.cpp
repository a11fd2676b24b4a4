#include "ym/period.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "ym/errors.hpp"

namespace ym {

namespace {

struct GaussRule {
    std::vector<double> x; // nodes on [-1, 1]
    std::vector<double> w;
};

// Gauss-Legendre nodes by Newton on P_n; standard three-term recurrence.
GaussRule make_gauss_rule(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& gauss_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
    return it->second;
}

void validate_amplitude(double M) {
    if (!(M > 0.0) || !(M < 1.0))
        throw DomainError("period: amplitude M must lie in (0,1)");
}

} // namespace

double elliptic_K(double m) {
    if (!(m >= 0.0) || !(m < 1.0))
        throw DomainError("elliptic_K: parameter m must lie in [0,1)");
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    // Quadratic convergence: ~6 iterations to the last ulp. Stop at 1e-16
    // relative or at the double fixed point, whichever comes first (the means
    // can stay 1 ulp apart indefinitely).
    for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        if (an == a && bn == b) break;
        a = an;
        b = bn;
    }
    return M_PI / (2.0 * a);
}

PeriodResult period_integral(double M) {
    validate_amplitude(M);
    const double M2 = M * M;
    // After theta = M sin phi: T = 2 * int_{-pi/2}^{pi/2} dphi / sqrt(2 - M^2(1 + sin^2 phi)).
    const auto integrand = [M2](double phi) {
        const double s = std::sin(phi);
        return 1.0 / std::sqrt(2.0 - M2 * (1.0 + s * s));
    };
    double prev = 0.0;
    bool have_prev = false;
    for (int n = 16; n <= 8192; n *= 2) {
        const GaussRule& g = gauss_rule(n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
            sum += g.w[i] * integrand(0.5 * M_PI * g.x[i]);
        const double T = M_PI * sum; // 2 * (pi/2 jacobian) * sum
        if (have_prev && std::abs(T - prev) < 1e-12) {
            PeriodResult res;
            res.m_amplitude = M;
            res.period = T;
            res.method = PeriodMethod::substitution_quadrature;
            res.est_error = std::abs(T - prev);
            return res;
        }
        prev = T;
        have_prev = true;
    }
    throw NumericError("period_integral: quadrature did not stabilize (M too close to 1?)");
}

PeriodResult period_agm(double M) {
    validate_amplitude(M);
    const double M2 = M * M;
    const double m = M2 / (2.0 - M2);
    const double T = 4.0 * elliptic_K(m) / std::sqrt(2.0 - M2);
    PeriodResult res;
    res.m_amplitude = M;
    res.period = T;
    res.method = PeriodMethod::elliptic_agm;
    res.est_error = 1e-15 * T; // AGM runs to machine precision
    return res;
}

} // namespace ym
