#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dualsolver/schedule.hpp"

using namespace dualsolver;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("vp-cosine at the symmetric point") {
    const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::VpCosine);
    const SchedulePoint p = eval_schedule(spec, 0.5);
    CHECK(p.alpha == doctest::Approx(0.7071068).epsilon(1e-6));
    CHECK(p.sigma == doctest::Approx(0.7071068).epsilon(1e-6));
    CHECK(p.lambda == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.d_lambda == doctest::Approx(-kPi).epsilon(1e-12));
}

TEST_CASE("ot substitution") {
    const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::Ot);
    const SchedulePoint p = eval_schedule(spec, 0.25);
    CHECK(p.alpha == doctest::Approx(0.75));
    CHECK(p.sigma == doctest::Approx(0.25));
    CHECK(p.d_alpha == doctest::Approx(-1.0));
    CHECK(p.d_sigma == doctest::Approx(1.0));
    CHECK(p.lambda == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(p.d_lambda == doctest::Approx(-16.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("ve keeps alpha constant") {
    const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::Ve);
    for (double t : {0.01, 0.3, 0.99}) {
        const SchedulePoint p = eval_schedule(spec, t);
        CHECK(p.alpha == 1.0);
        CHECK(p.d_alpha == 0.0);
        CHECK(p.sigma > 0.0);
    }
}

TEST_CASE("schedule point invariants hold on all kinds") {
    for (ScheduleKind kind : {ScheduleKind::VpCosine, ScheduleKind::VpLinearBeta,
                              ScheduleKind::Ve, ScheduleKind::Ot}) {
        const ScheduleSpec spec = ScheduleSpec::make(kind);
        for (int i = 0; i < 25; ++i) {
            const double t = spec.t_min + (spec.t_max - spec.t_min) * i / 24.0;
            const SchedulePoint p = eval_schedule(spec, t);
            CHECK(std::abs(p.lambda - std::log(p.alpha / p.sigma)) < 1e-12);
            CHECK(std::abs(p.d_lambda - (p.d_alpha / p.alpha - p.d_sigma / p.sigma)) < 1e-10);
        }
    }
}

TEST_CASE("analytic derivatives match central differences") {
    const double h = 1e-6;
    for (ScheduleKind kind : {ScheduleKind::VpCosine, ScheduleKind::VpLinearBeta,
                              ScheduleKind::Ve, ScheduleKind::Ot}) {
        const ScheduleSpec spec = ScheduleSpec::make(kind);
        for (int i = 0; i < 100; ++i) {
            const double t = 0.01 + (0.95 - 0.01) * i / 99.0;
            const SchedulePoint p = eval_schedule(spec, t);
            const SchedulePoint pm = eval_schedule(spec, t - h);
            const SchedulePoint pp = eval_schedule(spec, t + h);
            auto rel = [](double fd, double an) {
                return std::abs(fd - an) / std::max(1.0, std::abs(an));
            };
            CHECK(rel((pp.alpha - pm.alpha) / (2 * h), p.d_alpha) < 1e-5);
            CHECK(rel((pp.sigma - pm.sigma) / (2 * h), p.d_sigma) < 1e-5);
            CHECK(rel((pp.lambda - pm.lambda) / (2 * h), p.d_lambda) < 1e-5);
        }
    }
}

TEST_CASE("lambda decreases along increasing time grids") {
    for (ScheduleKind kind : {ScheduleKind::VpCosine, ScheduleKind::VpLinearBeta,
                              ScheduleKind::Ve, ScheduleKind::Ot}) {
        const ScheduleSpec spec = ScheduleSpec::make(kind);
        double prev = eval_schedule(spec, spec.t_min).lambda;
        for (int i = 1; i < 60; ++i) {
            const double t = spec.t_min + (spec.t_max - spec.t_min) * i / 59.0;
            const double cur = eval_schedule(spec, t).lambda;
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("vp identity alpha^2 + sigma^2 = 1") {
    for (ScheduleKind kind : {ScheduleKind::VpCosine, ScheduleKind::VpLinearBeta}) {
        const ScheduleSpec spec = ScheduleSpec::make(kind);
        for (int i = 0; i < 50; ++i) {
            const double t = spec.t_min + (spec.t_max - spec.t_min) * i / 49.0;
            const SchedulePoint p = eval_schedule(spec, t);
            CHECK(std::abs(p.alpha * p.alpha + p.sigma * p.sigma - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("out-of-range time names the clamp bounds") {
    const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::Ot);
    CHECK_THROWS_WITH_AS(eval_schedule(spec, -0.5),
                         doctest::Contains("clamp bounds"), std::out_of_range);
    CHECK_THROWS_AS(eval_schedule(spec, 1.5), std::out_of_range);
}

TEST_CASE("sde coefficients") {
    SUBCASE("ve has zero drift") {
        const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::Ve);
        for (double t : {0.1, 0.5, 0.9}) {
            const SdeCoeffs c = sde_coeffs(spec, t);
            const SchedulePoint p = eval_schedule(spec, t);
            CHECK(c.f == 0.0);
            CHECK(c.g2 == doctest::Approx(2.0 * p.sigma * p.d_sigma).epsilon(1e-12));
        }
    }
    SUBCASE("ot substitution at t=0.5") {
        const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::Ot);
        const SdeCoeffs c = sde_coeffs(spec, 0.5);
        CHECK(c.f == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(c.g2 == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("vp-cosine against the symbolic derivative") {
        // independent route: sigma^2 = sin^2(pi t/2) gives
        //   d sigma^2/dt = (pi/2) sin(pi t),  f = -(pi/2) tan(pi t/2)
        const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::VpCosine);
        for (double t : {0.2, 0.5, 0.8}) {
            const SdeCoeffs c = sde_coeffs(spec, t);
            const double f_sym = -0.5 * kPi * std::tan(0.5 * kPi * t);
            const double s2 = std::sin(0.5 * kPi * t) * std::sin(0.5 * kPi * t);
            const double g2_sym = 0.5 * kPi * std::sin(kPi * t) - 2.0 * f_sym * s2;
            CHECK(c.f == doctest::Approx(f_sym).epsilon(1e-12));
            CHECK(c.g2 == doctest::Approx(g2_sym).epsilon(1e-12));
        }
        CHECK(sde_coeffs(spec, 0.5).f == doctest::Approx(-1.5707963).epsilon(1e-6));
        CHECK(sde_coeffs(spec, 0.5).g2 == doctest::Approx(kPi).epsilon(1e-12));
    }
}

TEST_CASE("schedule kind names round-trip") {
    for (ScheduleKind kind : {ScheduleKind::VpCosine, ScheduleKind::VpLinearBeta,
                              ScheduleKind::Ve, ScheduleKind::Ot}) {
        CHECK(schedule_kind_from_name(schedule_kind_name(kind)) == kind);
    }
    CHECK_THROWS_AS(schedule_kind_from_name("nope"), std::invalid_argument);
}
