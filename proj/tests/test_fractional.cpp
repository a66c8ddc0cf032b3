#include <cmath>

#include <doctest.h>

#include "vfl/fractional.hpp"
#include "vfl/numeric.hpp"

using namespace vfl;

TEST_CASE("mittag-leffler alpha=1/2 matches the erfc identity") {
    // E_{1/2}(-x) = e^{x^2} erfc(x), oracle straight from std::erfc
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        const double oracle = std::exp(x * x) * std::erfc(x);
        CHECK(mittag_leffler(0.5, -x) == doctest::Approx(oracle).epsilon(1e-10));
    }
    // asymptotic branch, |z| beyond the series radius
    const double oracle10 = std::exp(100.0) * std::erfc(10.0);
    CHECK(mittag_leffler(0.5, -10.0) == doctest::Approx(oracle10).epsilon(1e-8));
}

TEST_CASE("mittag-leffler integer-order degenerations") {
    CHECK(mittag_leffler(1.0, -3.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
    CHECK(mittag_leffler(1.0, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(mittag_leffler(2.0, -4.0) == doctest::Approx(std::cos(2.0)).epsilon(1e-14));
    CHECK(mittag_leffler(2.0, 4.0) == doctest::Approx(std::cosh(2.0)).epsilon(1e-14));
}

TEST_CASE("mittag-leffler domain checks") {
    CHECK_THROWS_AS((void)mittag_leffler(0.0, -1.0), OutOfRange);
    CHECK_THROWS_AS((void)mittag_leffler(2.5, -1.0), OutOfRange);
}

TEST_CASE("wright density gamma=1/2 is the half gaussian") {
    // Phi_{1/2}(z) = e^{-z^2/4} / sqrt(pi)
    for (double z : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const double oracle = std::exp(-z * z / 4.0) / std::sqrt(M_PI);
        CHECK(wright_density(0.5, z) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("wright density integrates to one") {
    // horizon 8.5: the truncated tail is erfc(4.25) ~ 2e-9, and past that point
    // the series' cancellation noise would exceed the density itself
    const double mass = simpson([](double u) { return wright_density(0.5, u); }, 0.0, 8.5, 4096);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("alpha resolvent equals the mittag-leffler scalar resolvent") {
    for (double t : {0.25, 1.0, 2.0})
        CHECK(alpha_resolvent_s(0.5, 1.0, t) ==
              doctest::Approx(std::exp(t) * std::erfc(std::sqrt(t))).epsilon(1e-9));
}

TEST_CASE("subordination identity residual") {
    // gamma = alpha/beta = 1/2: S_{1/2}(t) = int Phi_{1/2}(u) S_1(u t^{1/2}) du
    for (double mu : {0.5, 1.0, 2.0})
        CHECK(subordination_check(0.5, 1.0, mu, 1.0) < 1e-6);
}

TEST_CASE("exponential bound constant is finite and monotone in omega") {
    const double c1 = exponential_bound_constant(0.5, {1.0}, {0.5, 1.0, 2.0});
    const double c2 = exponential_bound_constant(0.5, {2.0}, {0.5, 1.0, 2.0});
    CHECK(std::isfinite(c1));
    CHECK(c2 >= c1);
}

TEST_CASE("mittag-leffler at zero and monotone decay on the negative axis") {
    for (double alpha : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0})
        CHECK(mittag_leffler(alpha, 0.0) == 1.0);
    // complete monotonicity of the alpha <= 1 branch: positive, nonincreasing
    for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
        double prev = 1.0;
        for (double z = -0.25; z >= -20.0; z -= 0.25) {
            const double v = mittag_leffler(alpha, z);
            CHECK(v > 0.0);
            CHECK(v <= prev + 1e-14);
            prev = v;
        }
    }
}

TEST_CASE("mittag-leffler exponential bound holds with the fitted constant") {
    const std::vector<double> omegas = {0.25, 0.5, 1.0, 2.0, 4.0};
    const std::vector<double> ts = {0.0, 0.1, 0.5, 1.0, 2.0, 3.0};
    for (double alpha : {0.5, 0.75, 1.0, 1.5}) {
        const double c = exponential_bound_constant(alpha, omegas, ts);
        CHECK(c >= 1.0);
        for (double w : omegas)
            for (double t : ts) {
                const double lhs = mittag_leffler(alpha, w * std::pow(t, alpha));
                const double rhs = c * std::exp(std::pow(w, 1.0 / alpha) * t);
                CHECK(lhs <= rhs * (1.0 + 1e-12));
            }
    }
}
