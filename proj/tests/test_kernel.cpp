#include <cmath>
#include <complex>

#include <doctest.h>

#include "vfl/kernel.hpp"
#include "vfl/numeric.hpp"

using namespace vfl;

namespace {

// composite-Simpson oracle for the subinterval moments, independent of the
// closed forms used inside Kernel::moments
void quad_moments(const Kernel& k, double h, std::size_t idx, double& m0, double& m1) {
    const double a = (static_cast<double>(idx) - 1.0) * h;
    const double b = static_cast<double>(idx) * h;
    m0 = simpson([&](double u) { return k.eval(u); }, a, b, 512);
    m1 = simpson([&](double u) { return u * k.eval(u); }, a, b, 512);
}

}  // namespace

TEST_CASE("kernel moments match quadrature oracle") {
    const double h = 0.3;
    for (const Kernel& k : {Kernel::constant(), Kernel::linear(), Kernel::exponential(),
                            Kernel::lin_exp(), Kernel::power(1.5)}) {
        for (std::size_t idx = 1; idx <= 4; ++idx) {
            // Simpson loses accuracy against the sqrt-type derivative of the
            // Power kernel on the first cell; its analytic moment is checked below
            if (k.kind() == KernelKind::Power && idx == 1) continue;
            double m0, m1, q0, q1;
            k.moments(h, idx, m0, m1);
            quad_moments(k, h, idx, q0, q1);
            CHECK(m0 == doctest::Approx(q0).epsilon(1e-10));
            CHECK(m1 == doctest::Approx(q1).epsilon(1e-10));
        }
    }
}

TEST_CASE("singular power kernel first-cell moment is analytic") {
    // integral_0^h t^{alpha-1}/Gamma(alpha) dt = h^alpha / Gamma(alpha+1)
    const double alpha = 0.5, h = 0.01;
    double m0, m1;
    Kernel::power(alpha).moments(h, 1, m0, m1);
    CHECK(m0 == doctest::Approx(std::pow(h, alpha) / std::tgamma(alpha + 1.0)).epsilon(1e-12));
    CHECK(m1 == doctest::Approx(std::pow(h, alpha + 1.0) /
                                ((alpha + 1.0) * std::tgamma(alpha))).epsilon(1e-12));
}

TEST_CASE("laplace transforms") {
    const std::complex<double> z(0.7, 0.3);
    CHECK(std::abs(Kernel::constant().laplace(z) - 1.0 / z) < 1e-14);
    CHECK(std::abs(Kernel::linear().laplace(z) - 1.0 / (z * z)) < 1e-14);
    CHECK(std::abs(Kernel::exponential().laplace(z) - 1.0 / (1.0 + z)) < 1e-14);
    CHECK(std::abs(Kernel::lin_exp().laplace(z) - 1.0 / ((1.0 + z) * (1.0 + z))) < 1e-14);
    CHECK(std::abs(Kernel::power(0.5).laplace(z) - std::pow(z, -0.5)) < 1e-14);
}

TEST_CASE("catalog classification") {
    CHECK(*Kernel::constant().classify().completely_positive);
    CHECK(*Kernel::exponential().classify().completely_monotonic);
    CHECK_FALSE(*Kernel::linear().classify().completely_monotonic);
    CHECK_FALSE(Kernel::tabulated({0, 1}, {1, 1}).classify().completely_positive.has_value());
}

TEST_CASE("tabulated kernel interpolates and range-checks") {
    const Kernel k = Kernel::tabulated({0.0, 1.0, 2.0}, {1.0, 0.5, 0.0});
    CHECK(k.eval(0.5) == doctest::Approx(0.75));
    CHECK(k.eval(1.5) == doctest::Approx(0.25));
    CHECK_THROWS_AS((void)k.eval(3.0), OutOfRange);
}

TEST_CASE("power kernel domain") {
    CHECK_THROWS_AS((void)Kernel::power(0.0), OutOfRange);
    CHECK_THROWS_AS((void)Kernel::power(2.0), OutOfRange);
    CHECK_THROWS_AS((void)Kernel::power(0.5).eval(0.0), SingularAtZero);
}

namespace {

// Product-rule quadrature of integral_0^T e^{-lambda t} a(t) dt: the
// exponential is linearized per cell and paired with the exact kernel
// moments, so singular kernels (Power, alpha<1) integrate cleanly.
double laplace_by_quadrature(const Kernel& k, double lambda, double tmax, double h) {
    const auto n = static_cast<std::size_t>(std::llround(tmax / h));
    double sum = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double t0 = static_cast<double>(j - 1) * h;
        const double t1 = static_cast<double>(j) * h;
        const double f0 = std::exp(-lambda * t0);
        const double f1 = std::exp(-lambda * t1);
        double m0 = 0.0, m1 = 0.0;
        k.moments(h, j, m0, m1);
        const double w1 = (f1 - f0) / h;
        sum += (f0 - w1 * t0) * m0 + w1 * m1;
    }
    return sum;
}

}  // namespace

TEST_CASE("laplace transform matches numeric quadrature") {
    const double lambda = 1.3;
    const Kernel kernels[] = {Kernel::constant(), Kernel::linear(), Kernel::exponential(),
                              Kernel::lin_exp(), Kernel::power(0.5), Kernel::power(1.5)};
    for (const Kernel& k : kernels) {
        const double exact = k.laplace({lambda, 0.0}).real();
        const double quad = laplace_by_quadrature(k, lambda, 40.0, 5e-4);
        CHECK(std::abs(quad - exact) / std::abs(exact) < 1e-6);
    }
}

TEST_CASE("power kernel with alpha = 1 degenerates to the constant kernel") {
    const Kernel p = Kernel::power(1.0);
    const Kernel c = Kernel::constant();
    for (double t : {0.0, 0.25, 1.0, 7.5}) CHECK(p.eval(t) == c.eval(t));
    double pm0 = 0.0, pm1 = 0.0, cm0 = 0.0, cm1 = 0.0;
    p.moments(0.1, 3, pm0, pm1);
    c.moments(0.1, 3, cm0, cm1);
    CHECK(pm0 == doctest::Approx(cm0).epsilon(1e-14));
    CHECK(pm1 == doctest::Approx(cm1).epsilon(1e-14));
}
