#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dualsolver/dual_core.hpp"
#include "dualsolver/rng.hpp"
#include "dualsolver/schedule.hpp"

using namespace dualsolver;

namespace {

const ScheduleSpec kOt = ScheduleSpec::make(ScheduleKind::Ot);

SchedulePoint ot_point(double t) { return eval_schedule(kOt, t); }

}  // namespace

TEST_CASE("branch coefficients") {
    const SchedulePoint a = ot_point(0.8);
    const SchedulePoint b = ot_point(0.6);
    SUBCASE("gamma = 1 uses sigma ratios") {
        const BranchCoeffs c = branch_coeffs(1.0, a, b);
        CHECK(c.A == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(c.B == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(c.branch == GammaBranch::NonNegative);
    }
    SUBCASE("gamma = 0 is the identity pair") {
        const BranchCoeffs c = branch_coeffs(0.0, a, b);
        CHECK(c.A == 1.0);
        CHECK(c.B == 1.0);
    }
    SUBCASE("gamma = -1 uses alpha ratios") {
        const BranchCoeffs c = branch_coeffs(-1.0, a, b);
        CHECK(c.A == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(c.B == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(c.branch == GammaBranch::Negative);
    }
    SUBCASE("invalid rates rejected") {
        SchedulePoint bad = a;
        bad.sigma = 0.0;
        CHECK_THROWS_AS(branch_coeffs(1.0, bad, b), std::domain_error);
        CHECK_THROWS_AS(branch_coeffs(std::nan(""), a, b), std::domain_error);
    }
}

TEST_CASE("quantities per branch") {
    const SchedulePoint p = ot_point(0.8);
    SUBCASE("gamma = 1") {
        const Quantities q = quantities(1.0, p);
        CHECK(q.q_u == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(q.q_v == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("gamma = 0") {
        const Quantities q = quantities(0.0, p);
        CHECK(q.q_u == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(q.q_v == doctest::Approx(0.8).epsilon(1e-12));
    }
    SUBCASE("gamma = -1") {
        const Quantities q = quantities(-1.0, p);
        CHECK(q.q_u == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(q.q_v == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("overflow guard") {
        SchedulePoint tiny = p;
        tiny.sigma = 1e-3;
        CHECK_THROWS_AS(quantities(200.0, tiny), std::overflow_error);
    }
}

TEST_CASE("log-linear transform") {
    CHECK(log_linear(1.0, 1.0, TransformDir::Forward) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    SUBCASE("tau -> 0 limit is the identity") {
        for (double y : {0.37, 1.0, 2.0}) {
            const double u = log_linear(y, 1e-12, TransformDir::Forward);
            CHECK(std::abs(u - y) / y < 1e-12);
        }
        // the deviation itself is tau*y^2/2 to leading order
        const double y = 15.0;
        const double u = log_linear(y, 1e-12, TransformDir::Forward);
        CHECK(y - u == doctest::Approx(1e-12 * y * y / 2.0).epsilon(1e-4));
    }
    SUBCASE("roundtrip") {
        const double u = log_linear(0.37, 2.5, TransformDir::Forward);
        CHECK(log_linear(u, 2.5, TransformDir::Inverse) ==
              doctest::Approx(0.37).epsilon(1e-12));
    }
    SUBCASE("series and direct branches agree near the threshold") {
        for (double tau : {5e-9, 2e-8}) {
            for (double y : {0.3, 4.0}) {
                const double direct = std::log1p(tau * y) / tau;
                CHECK(log_linear(y, tau, TransformDir::Forward) ==
                      doctest::Approx(direct).epsilon(1e-12));
            }
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(log_linear(-3.0, 0.5, TransformDir::Forward), std::domain_error);
        CHECK_THROWS_AS(log_linear(1.0, 0.0, TransformDir::Forward), std::domain_error);
    }
}

TEST_CASE("type1 transform") {
    SUBCASE("log 1 = 0") {
        for (double tau : {0.0, 0.3, 1.0}) {
            CHECK(type1_transform(1.0, tau, TransformDir::Forward) ==
                  doctest::Approx(1.0 - tau).epsilon(1e-12));
        }
    }
    CHECK(type1_transform(2.7, 0.0, TransformDir::Forward) == doctest::Approx(2.7));
    SUBCASE("roundtrip") {
        const double u = type1_transform(2.0, 0.5, TransformDir::Forward);
        CHECK(type1_transform(u, 0.5, TransformDir::Inverse) ==
              doctest::Approx(2.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(type1_transform(-1.0, 0.5, TransformDir::Forward), std::domain_error);
    CHECK_THROWS_AS(type1_transform(0.0, 0.5, TransformDir::Forward), std::domain_error);
}

TEST_CASE("interval terms on the worked OT interval") {
    const SchedulePoint a = ot_point(0.8);
    const SchedulePoint b = ot_point(0.6);
    const IntervalTerms terms = interval_terms(1.0, 1.0, 1.0, a, b);
    CHECK(terms.dLinv_u == doctest::Approx(2.0 / 3.0 - 0.25).epsilon(1e-12));
    CHECK(terms.dLinv_v == doctest::Approx(0.0));
    CHECK(terms.du == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
    CHECK(terms.q_u_i == doctest::Approx(0.25).epsilon(1e-12));

    SUBCASE("du approaches dLinv as tau -> 0") {
        const IntervalTerms small = interval_terms(1.0, 1e-12, 1e-12, a, b);
        CHECK(std::abs(small.du - small.dLinv_u) < 1e-9);
    }
    SUBCASE("dLinv is bit-identical across tau") {
        const IntervalTerms t0 = interval_terms(1.7, 1e-6, 1e-6, a, b);
        for (double tau : {0.5, 1.0, 5.0}) {
            const IntervalTerms t1 = interval_terms(1.7, tau, tau, a, b);
            CHECK(t1.dLinv_u == t0.dLinv_u);
            CHECK(t1.dLinv_v == t0.dLinv_v);
        }
    }
}

TEST_CASE("residual term") {
    CHECK(residual(0.5, 0.0) == 0.0);
    CHECK(residual(0.5, 2.0) == doctest::Approx(0.5));
    CHECK(residual(-0.3, 1.0) == doctest::Approx(0.09));
}

TEST_CASE("beta of gamma") {
    const SchedulePoint p = ot_point(0.8);
    CHECK(beta_of_gamma(0.0, p) == 0.0);
    CHECK(beta_of_gamma(1.0, p) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(beta_of_gamma(-1.0, p) == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("gamma branches meet continuously at zero") {
    Rng rng(42);
    const ScheduleSpec cosine = ScheduleSpec::make(ScheduleKind::VpCosine);
    for (int trial = 0; trial < 25; ++trial) {
        const double t1 = rng.uniform_in(0.3, 0.9);
        const double t2 = rng.uniform_in(0.05, t1 - 0.05);
        const SchedulePoint a = eval_schedule(cosine, t1);
        const SchedulePoint b = eval_schedule(cosine, t2);
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            const BranchCoeffs cp = branch_coeffs(eps, a, b);
            const BranchCoeffs cm = branch_coeffs(-eps, a, b);
            const Quantities qp = quantities(eps, a);
            const Quantities qm = quantities(-eps, a);
            // the branch gap vanishes linearly in eps
            CHECK(std::abs(cp.A - cm.A) < 60.0 * eps);
            CHECK(std::abs(cp.B - cm.B) < 60.0 * eps);
            CHECK(std::abs(qp.q_u - qm.q_u) < 60.0 * eps);
            CHECK(std::abs(qp.q_v - qm.q_v) < 60.0 * eps);
        }
    }
}

TEST_CASE("reduction to noise/velocity/data coefficients at gamma = -1, 0, 1") {
    Rng rng(7);
    for (ScheduleKind kind : {ScheduleKind::VpCosine, ScheduleKind::Ot}) {
        const ScheduleSpec spec = ScheduleSpec::make(kind);
        for (int trial = 0; trial < 50; ++trial) {
            const double t_i = rng.uniform_in(0.25, 0.95);
            const double t_n = rng.uniform_in(0.01, t_i - 0.02);
            const SchedulePoint a = eval_schedule(spec, t_i);
            const SchedulePoint b = eval_schedule(spec, t_n);
            auto rel = [](double x, double y) {
                return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
            };

            // data form (gamma = 1): A = sigma'/sigma, x coefficient
            // sigma' * (e^lambda' - e^lambda), no eps term
            {
                const BranchCoeffs c = branch_coeffs(1.0, a, b);
                const IntervalTerms t = interval_terms(1.0, 1.0, 1.0, a, b);
                CHECK(rel(c.A, b.sigma / a.sigma) < 1e-12);
                CHECK(rel(c.B * t.dLinv_u,
                          b.sigma * (std::exp(b.lambda) - std::exp(a.lambda))) < 1e-12);
                CHECK(t.dLinv_v == 0.0);
            }
            // velocity form (gamma = 0): A = 1, coefficients are the raw
            // rate increments
            {
                const BranchCoeffs c = branch_coeffs(0.0, a, b);
                const IntervalTerms t = interval_terms(0.0, 1.0, 1.0, a, b);
                CHECK(c.A == 1.0);
                CHECK(rel(c.B * t.dLinv_u, b.alpha - a.alpha) < 1e-12);
                CHECK(rel(c.B * t.dLinv_v, b.sigma - a.sigma) < 1e-12);
            }
            // noise form (gamma = -1): A = alpha'/alpha, eps coefficient
            // alpha' * (e^-lambda' - e^-lambda), no x term
            {
                const BranchCoeffs c = branch_coeffs(-1.0, a, b);
                const IntervalTerms t = interval_terms(-1.0, 1.0, 1.0, a, b);
                CHECK(rel(c.A, b.alpha / a.alpha) < 1e-12);
                CHECK(t.dLinv_u == 0.0);
                CHECK(rel(c.B * t.dLinv_v,
                          b.alpha * (std::exp(-b.lambda) - std::exp(-a.lambda))) < 1e-12);
            }
        }
    }
}

TEST_CASE("softplus mapping and clamps") {
    CHECK(tau_from_raw(inv_softplus(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tau_from_raw(-40.0) == kTauFloor);
    CHECK(softplus(inv_softplus(0.25)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(clamp_gamma(9.0) == 4.0);
    CHECK(clamp_gamma(-9.0) == -4.0);
    CHECK(clamp_gamma(0.7) == 0.7);
}
