#include "doctest.h"

#include <cmath>
#include <vector>

#include "ym/closedform.hpp"
#include "ym/errors.hpp"
#include "ym/orbit.hpp"
#include "ym/period.hpp"

using namespace ym;

TEST_CASE("first integral at landmark states") {
    CHECK(first_integral({0.0, 0.0}) == -1.0);
    CHECK(first_integral({1.0, 0.0}) == 0.0);
    CHECK(first_integral({-1.0, 0.0}) == 0.0);
    CHECK(first_integral({0.0, 1.0}) == 0.0);
    CHECK(first_integral({0.5, 0.0}) == -0.5625);
    CHECK(first_integral({2.0, 0.0}) == -9.0);
}

TEST_CASE("amplitude and level are inverse maps") {
    CHECK(amplitude_from_c(-0.5625) == 0.5);
    for (double M = 0.05; M < 1.0; M += 0.05) {
        const double c = -(1.0 - M * M) * (1.0 - M * M);
        CHECK(std::abs(amplitude_from_c(c) - M) <= 1e-14);
    }
    CHECK(std::abs(amplitude_from_c(-1e-12) - std::sqrt(1.0 - 1e-6)) <= 1e-12);
    for (double c : {-1.0, 0.0, 0.5, -2.0}) {
        CHECK_THROWS_AS((void)amplitude_from_c(c), DomainError);
    }
}

TEST_CASE("equilibria integrate to themselves exactly") {
    for (double v0 : {0.0, 1.0, -1.0}) {
        Orbit orb = integrate({v0, 0.0}, {-5.0, 5.0});
        CHECK(!orb.escaped);
        for (const auto& p : orb.y) {
            CHECK(p.v == v0);  // zero vector field, bitwise fixed point
            CHECK(p.vt == 0.0);
        }
        CHECK(!detect_period(orb).has_value());
    }
}

TEST_CASE("bounded orbit stays in its amplitude band and conserves c") {
    Orbit orb = integrate({0.5, 0.0}, {-20.0, 20.0});
    CHECK(!orb.escaped);
    CHECK(orb.drift <= 1e-8);
    CHECK(orb.drift <= orb.drift_tolerance);
    double vmax = 0.0;
    for (const auto& p : orb.y) vmax = std::max(vmax, std::abs(p.v));
    CHECK(vmax <= 0.5 + 1e-8);
    CHECK(vmax >= 0.5 - 1e-6);  // the extremes are attained
}

TEST_CASE("samples satisfy the two-turning-point identity") {
    // v_t^2 = (v^2 - (2 - M^2)) (v^2 - M^2) at level c = -(1 - M^2)^2
    const double M = 0.5;
    Orbit orb = integrate({M, 0.0}, {0.0, 30.0});
    double worst = 0.0;
    for (const auto& p : orb.y) {
        const double lhs = p.vt * p.vt;
        const double rhs = (p.v * p.v - (2.0 - M * M)) * (p.v * p.v - M * M);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("event times of the amplitude-0.5 oscillation") {
    const double T = 4.934422337439706;  // period at M = 0.5, frozen
    Orbit orb = integrate({0.5, 0.0}, {0.0, 6.0});
    const OrbitEvent* first_vzero = nullptr;
    const OrbitEvent* first_vtzero = nullptr;
    for (const auto& e : orb.events) {
        if (e.t <= 1e-12) continue;  // skip the start extremum itself
        if (e.kind == EventKind::v_zero && !first_vzero) first_vzero = &e;
        if (e.kind == EventKind::vt_zero && !first_vtzero) first_vtzero = &e;
    }
    REQUIRE(first_vzero != nullptr);
    REQUIRE(first_vtzero != nullptr);
    // starting at the maximum: v crosses 0 at T/4 falling, v_t at T/2
    CHECK(std::abs(first_vzero->t - T / 4.0) <= 1e-8);
    CHECK(first_vzero->direction == -1);
    CHECK(std::abs(first_vtzero->t - T / 2.0) <= 1e-8);
    CHECK(std::abs(first_vtzero->state.v + 0.5) <= 1e-8);
}

TEST_CASE("level sets above zero escape and truncate the orbit") {
    Orbit orb = integrate({2.0, 0.0}, {0.0, 5.0});
    CHECK(orb.escaped);
    REQUIRE(!orb.events.empty());
    const OrbitEvent& last = orb.events.back();
    CHECK(last.kind == EventKind::escape);
    CHECK(last.direction == 1);
    CHECK(std::abs(last.state.v - 3.0) <= 1e-6);
    CHECK(last.t == doctest::Approx(0.3562278961911094).epsilon(1e-6));
    CHECK(orb.t_max() <= last.t + 1e-12);
    for (const auto& p : orb.y) CHECK(std::abs(p.v) <= 3.0 + 1e-9);
}

TEST_CASE("drift scales down with tolerance") {
    Orbit loose = integrate({0.5, 0.0}, {0.0, 100.0}, {1e-6, false});
    Orbit tight = integrate({0.5, 0.0}, {0.0, 100.0}, {1e-10, false});
    CHECK(loose.drift > tight.drift);
    CHECK(tight.drift <= 1e-8);
    CHECK(loose.drift <= loose.drift_tolerance);
    CHECK(tight.drift <= tight.drift_tolerance);
}

TEST_CASE("projection pins the level set without touching v") {
    Orbit raw = integrate({0.5, 0.0}, {0.0, 100.0}, {1e-10, false});
    Orbit proj = integrate({0.5, 0.0}, {0.0, 100.0}, {1e-10, true});
    CHECK(proj.drift <= 1e-13);
    CHECK(proj.drift < raw.drift);
}

TEST_CASE("detected period matches the quadrature") {
    Orbit orb = integrate({0.5, 0.0}, {0.0, 40.0});
    auto T = detect_period(orb);
    REQUIRE(T.has_value());
    CHECK(std::abs(*T - 4.934422337439706) / 4.934422337439706 <= 1e-6);

    const double M = 1.0 / std::sqrt(2.0);
    Orbit orb2 = integrate({M, 0.0}, {0.0, 40.0});
    auto T2 = detect_period(orb2);
    REQUIRE(T2.has_value());
    CHECK(std::abs(*T2 - 5.662948833703825) / 5.662948833703825 <= 1e-6);
    CHECK(std::abs(*T2 - period_integral(M).period) / *T2 <= 1e-6);
}

TEST_CASE("period detection refuses spans without three same-side crossings") {
    Orbit orb = integrate({0.5, 0.0}, {0.0, 3.0});
    CHECK_THROWS_AS((void)detect_period(orb), DomainError);
}

TEST_CASE("reflection symmetries of a bounded orbit started at an extremum") {
    Orbit orb = integrate({0.5, 0.0}, {-20.0, 20.0});
    ReflectionReport rep = reflection_checks(orb);
    CHECK(rep.even_defect <= 1e-8);
    CHECK(rep.symmetric_even);
    REQUIRE(rep.min_defect.has_value());
    CHECK(*rep.min_defect <= 1e-8);
    CHECK(rep.symmetric_min);
    REQUIRE(rep.t_first_min.has_value());
    // first minimum sits half a period after the starting maximum
    CHECK(std::abs(*rep.t_first_min - 2.467211168719853) <= 1e-6);
}

TEST_CASE("reflection checks enforce or waive the extremum precondition") {
    Orbit mid = integrate({0.3, 0.2}, {-10.0, 10.0});
    CHECK_THROWS_AS((void)reflection_checks(mid), DomainError);
    ReflectionReport rep = reflection_checks(mid, false);
    CHECK(!rep.symmetric_even);  // phase-shifted start breaks evenness

    Orbit hetero = integrate({0.0, -1.0}, {-8.0, 8.0}, {1e-10, true});
    ReflectionReport hrep = reflection_checks(hetero, false);
    CHECK(!hrep.symmetric_even);  // odd profile, defect ~ 2|v|
    CHECK(hrep.even_defect > 1.0);
}

TEST_CASE("dense output matches a finer re-integration") {
    Orbit coarse = integrate({0.5, 0.0}, {0.0, 10.0}, {1e-10, false});
    Orbit fine = integrate({0.5, 0.0}, {0.0, 10.0}, {1e-13, false});
    for (double t : {0.1, 1.234, 4.0, 5.67, 9.99}) {
        PhasePoint a = coarse.eval(t);
        PhasePoint b = fine.eval(t);
        CHECK(std::abs(a.v - b.v) <= 1e-8);
        CHECK(std::abs(a.vt - b.vt) <= 1e-8);
    }
    CHECK_THROWS_AS((void)coarse.eval(10.5), DomainError);
    CHECK_THROWS_AS((void)coarse.eval(-0.5), DomainError);
}

TEST_CASE("dense output reproduces the closed-form connecting orbit") {
    Orbit orb = integrate({0.0, -1.0}, {-6.0, 6.0}, {1e-10, true});
    for (double t = -5.5; t <= 5.5; t += 0.31) {
        CHECK(std::abs(orb.eval(t).v - soliton_cylinder({1.0, 1}, t)) <= 1e-8);
    }
}

TEST_CASE("backward and forward passes merge into one ascending orbit") {
    Orbit orb = integrate({0.3, 0.4}, {-5.0, 7.0});
    CHECK(orb.t_min() == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(orb.t_max() == doctest::Approx(7.0).epsilon(1e-12));
    for (std::size_t i = 1; i < orb.t.size(); ++i) CHECK(orb.t[i] > orb.t[i - 1]);
    bool has_start = false;
    for (std::size_t i = 0; i < orb.t.size(); ++i) {
        if (orb.t[i] == 0.0) {
            has_start = true;
            CHECK(orb.y[i].v == 0.3);
            CHECK(orb.y[i].vt == 0.4);
        }
    }
    CHECK(has_start);
}

TEST_CASE("span and state validation") {
    CHECK_THROWS_AS((void)integrate({0.5, 0.0}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS((void)integrate({0.5, 0.0}, {-2.0, -1.0}), DomainError);
    CHECK_THROWS_AS((void)integrate({0.5, 0.0}, {3.0, 3.0}), DomainError);
    CHECK_THROWS_AS((void)integrate({std::nan(""), 0.0}, {0.0, 1.0}), DomainError);
    IntegrateOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS((void)integrate({0.5, 0.0}, {0.0, 1.0}, bad), DomainError);
}

TEST_CASE("step-size underflow reports the partial orbit") {
    IntegrateOptions opts;
    opts.tol = 1e-300;  // unattainable accuracy forces rejection cascade
    try {
        (void)integrate({0.5, 0.0}, {0.0, 10.0}, opts);
        CHECK(false);
    } catch (const IntegrationError& e) {
        CHECK(e.partial.t.size() >= 1);
        CHECK(e.partial.t_max() < 10.0);
    }
}
