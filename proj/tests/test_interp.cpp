#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dualsolver/interp.hpp"
#include "dualsolver/rng.hpp"

using namespace dualsolver;

TEST_CASE("linear interpolation") {
    SUBCASE("worked example") {
        const std::vector<double> out = linear_interp({0.0, 1.0, 2.0}, 5);
        const std::vector<double> want = {0.0, 0.5, 1.0, 1.5, 2.0};
        REQUIRE(out.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
            CHECK(out[i] == doctest::Approx(want[i]).epsilon(1e-15));
        }
    }
    SUBCASE("same length is the identity") {
        const std::vector<double> arr = {0.3, -1.2, 4.0, 0.9};
        CHECK(linear_interp(arr, 4) == arr);
    }
    SUBCASE("constant stays constant") {
        for (double v : linear_interp({2.5, 2.5, 2.5}, 7)) {
            CHECK(v == doctest::Approx(2.5).epsilon(1e-15));
        }
    }
    SUBCASE("last element is exact") {
        const std::vector<double> out = linear_interp({1.0, 0.1, 0.7}, 6);
        CHECK(out.back() == 0.7);
    }
    SUBCASE("bounds are preserved") {
        Rng rng(31);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> arr(5);
            for (double& v : arr) v = rng.normal();
            const double lo = *std::min_element(arr.begin(), arr.end());
            const double hi = *std::max_element(arr.begin(), arr.end());
            for (double v : linear_interp(arr, 11)) {
                CHECK(v >= lo - 1e-12);
                CHECK(v <= hi + 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(linear_interp({1.0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(linear_interp({1.0, 2.0}, 1), std::invalid_argument);
}

TEST_CASE("averaged interpolation") {
    SUBCASE("worked example with equal weights") {
        const std::vector<double> out =
            averaged_interp({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0, 3.0, 4.0}, 4);
        const std::vector<double> want = {0.0, 1.0, 2.0, 3.0};
        REQUIRE(out.size() == 4);
        for (std::size_t i = 0; i < want.size(); ++i) {
            CHECK(out[i] == doctest::Approx(want[i]).epsilon(1e-15));
        }
    }
    SUBCASE("identical interpolants pass through") {
        // arrays chosen so both resampled versions agree exactly
        const std::vector<double> fM = {1.0, 1.0, 1.0};
        const std::vector<double> fL = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
        for (double v : averaged_interp(fM, fL, 4)) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("ordering violations are rejected") {
        CHECK_THROWS_AS(averaged_interp({1.0, 2.0, 3.0}, {1.0, 2.0}, 4),
                        std::invalid_argument);
        CHECK_THROWS_AS(averaged_interp({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0, 4.0}, 3),
                        std::invalid_argument);
    }
}

TEST_CASE("parameter interpolation") {
    SUBCASE("constant parameter sets stay constant") {
        SolverParams p3 = SolverParams::ddim_init(3);
        SolverParams p5 = SolverParams::ddim_init(5);
        const SolverParams p4 = interp_params(p3, p5, 4);
        p4.validate(4);
        for (double v : p4.pred.gamma) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
        for (double v : p4.corr.kappa_u) CHECK(v == doctest::Approx(0.0));
        CHECK(p4.corr.size() == 3);
        CHECK(p4.raw_steps.size() == 4);
    }
    SUBCASE("linear-in-index arrays stay linear") {
        SolverParams p3 = SolverParams::ddim_init(3);
        SolverParams p5 = SolverParams::ddim_init(5);
        for (std::size_t i = 0; i < 3; ++i) p3.pred.gamma[i] = static_cast<double>(i);
        for (std::size_t i = 0; i < 5; ++i) p5.pred.gamma[i] = static_cast<double>(i) * 0.5;
        const SolverParams p4 = interp_params(p3, p5, 4);
        // second differences vanish for a linear sequence
        for (std::size_t i = 0; i + 2 < 4; ++i) {
            const double dd = p4.pred.gamma[i + 2] - 2.0 * p4.pred.gamma[i + 1] +
                              p4.pred.gamma[i];
            CHECK(std::abs(dd) < 1e-12);
        }
    }
    SUBCASE("tau interpolation happens on raw values") {
        SolverParams p3 = SolverParams::ddim_init(3);
        SolverParams p5 = SolverParams::ddim_init(5);
        for (double& v : p3.pred.tau_u_raw) v = -2.0;
        for (double& v : p5.pred.tau_u_raw) v = 4.0;
        const SolverParams p4 = interp_params(p3, p5, 4);
        for (double v : p4.pred.tau_u_raw) {
            CHECK(v == doctest::Approx(0.5 * (-2.0) + 0.5 * 4.0).epsilon(1e-12));
        }
    }
    SUBCASE("step-count ordering is enforced") {
        const SolverParams p3 = SolverParams::ddim_init(3);
        const SolverParams p5 = SolverParams::ddim_init(5);
        CHECK_THROWS_AS(interp_params(p5, p3, 4), std::invalid_argument);
        CHECK_THROWS_AS(interp_params(p3, p5, 5), std::invalid_argument);
    }
}
