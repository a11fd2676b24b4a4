#include "doctest.h"

#include <cmath>

#include "ym/errors.hpp"
#include "ym/period.hpp"

using namespace ym;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLimit = 4.442882938158366;  // pi * sqrt(2)

// independent slow evaluation of K(m) by composite Simpson
double K_simpson(double m) {
    const int n = 200000;
    const double h = (kPi / 2.0) / n;
    auto f = [m](double phi) {
        const double s = std::sin(phi);
        return 1.0 / std::sqrt(1.0 - m * s * s);
    };
    double s = f(0.0) + f(kPi / 2.0);
    for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("elliptic_K reference values") {
    CHECK(std::abs(elliptic_K(0.0) - kPi / 2.0) <= 1e-15);
    // frozen from the AGM run and confirmed by slow quadrature below
    CHECK(std::abs(elliptic_K(0.5) - 1.8540746773013719) <= 1e-14);
    CHECK(std::abs(elliptic_K(1.0 / 7.0) - 1.6319067960784380) <= 1e-14);
    CHECK(std::abs(elliptic_K(0.5) - K_simpson(0.5)) <= 1e-12);
    CHECK(std::abs(elliptic_K(0.9) - K_simpson(0.9)) <= 1e-11);
}

TEST_CASE("elliptic_K grows with the parameter") {
    double prev = elliptic_K(0.0);
    for (double m = 0.1; m < 1.0; m += 0.1) {
        double cur = elliptic_K(m);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("elliptic_K domain") {
    CHECK_THROWS_AS((void)elliptic_K(1.0), DomainError);
    CHECK_THROWS_AS((void)elliptic_K(1.5), DomainError);
    CHECK_THROWS_AS((void)elliptic_K(-0.1), DomainError);
}

TEST_CASE("period against frozen multiprecision values") {
    // amplitudes 0.1 .. 0.9
    const double expected[] = {4.4596433612797080, 4.5111540538849206, 4.6013775679292248,
                               4.7379659623224856, 4.9344223374397061, 5.2149455075816387,
                               5.6265509732520997, 6.2765999811089264, 7.5089325036662764};
    for (int i = 0; i < 9; ++i) {
        const double M = 0.1 * (i + 1);
        CHECK(std::abs(period_integral(M).period - expected[i]) <= 5e-13);
        CHECK(std::abs(period_agm(M).period - expected[i]) <= 5e-13);
    }
    CHECK(std::abs(period_integral(0.5).period - 4.934422337439706) <= 2e-12);
    CHECK(std::abs(period_integral(1.0 / std::sqrt(2.0)).period - 5.662948833703825) <= 2e-12);
    CHECK(std::abs(period_integral(0.999).period - 16.589109462193825) <= 1e-9);
}

TEST_CASE("both methods agree to near machine precision") {
    for (double M = 0.05; M < 1.0; M += 0.05) {
        PeriodResult q = period_integral(M);
        PeriodResult a = period_agm(M);
        CHECK(std::abs(q.period - a.period) <= 1e-10);
        CHECK(q.method == PeriodMethod::substitution_quadrature);
        CHECK(a.method == PeriodMethod::elliptic_agm);
        CHECK(q.m_amplitude == M);
        CHECK(q.est_error >= 0.0);
        CHECK(a.est_error >= 0.0);
    }
}

TEST_CASE("small amplitudes approach the harmonic limit quadratically") {
    // T(M) = pi*sqrt(2) * (1 + 3 M^2 / 8 + O(M^4))
    const double T = period_integral(1e-3).period;
    CHECK(std::abs(T - kLimit) <= 2e-6);
    const double expansion = kLimit * (1.0 + 3.0 * 1e-6 / 8.0);
    CHECK(std::abs(T - expansion) <= 1e-11);
    // the quadratic term is real: the deviation cannot shrink below it
    CHECK(T - kLimit >= 0.9 * kLimit * 3.0 * 1e-6 / 8.0);
}

TEST_CASE("period exceeds the harmonic limit and grows with amplitude") {
    double prev = kLimit;
    for (double M : {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const double T = period_integral(M).period;
        CHECK(T > prev);
        prev = T;
    }
}

TEST_CASE("period domain is the open unit interval") {
    for (double M : {0.0, 1.0, -0.5, 1.5}) {
        CHECK_THROWS_AS((void)period_integral(M), DomainError);
        CHECK_THROWS_AS((void)period_agm(M), DomainError);
    }
}
