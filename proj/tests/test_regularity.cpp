#include <cmath>
#include <vector>

#include <doctest.h>

#include "vfl/field.hpp"
#include "vfl/regularity.hpp"
#include "vfl/rng.hpp"

using namespace vfl;

TEST_CASE("sobolev rule 2(q - alpha) > d") {
    CHECK(sobolev_check(1, 1.0, 0.0).verdict == Verdict::holds);
    CHECK(sobolev_check(1, 1.0, 0.5).verdict == Verdict::fails);  // 2(0.5) = 1, not > 1
    CHECK(sobolev_check(3, 2.0, 0.25).verdict == Verdict::holds);
    CHECK(sobolev_check(3, 1.0, 0.0).verdict == Verdict::fails);
}

TEST_CASE("function-valuedness over the radial power family") {
    // Gamma(theta) ~ |theta|^{-beta}: holds exactly for beta in (0,2)
    for (std::size_t d : {2u, 3u})
        for (double beta : {0.5, 1.0, 1.9, 2.0, 2.5}) {
            const auto rep = function_valued_check(SpectralSpec::radial_power(d, beta),
                                                   Symbol::fractional_power(d, 2.0),
                                                   Kernel::constant(), 1.0);
            const bool expected = beta > 0.0 && beta < 2.0;
            CHECK(rep.verdict == (expected ? Verdict::holds : Verdict::fails));
        }
}

TEST_CASE("finite spectral mass is always function-valued") {
    const auto rep = function_valued_check(SpectralSpec::finite_mass(2, 1.0),
                                           Symbol::fractional_power(2, 2.0),
                                           Kernel::constant(), 1.0);
    CHECK(rep.verdict == Verdict::holds);
}

TEST_CASE("gamma-domain exponent comparison") {
    // near 0: alpha_s - delta - beta - 1 > -1; at infinity: delta - alpha_s - beta - 1 < -1
    CHECK(gamma_domain_check(SpectralSpec::radial_power(2, 1.0), 2.0, 0.5).verdict ==
          Verdict::holds);
    CHECK(gamma_domain_check(SpectralSpec::radial_power(2, 1.0), 0.5, 1.0).verdict ==
          Verdict::fails);
}

TEST_CASE("admissibility constants from the closed-form r") {
    const std::vector<double> n2 = {4, 16, 64, 256, 1024, 4096, 10000};
    // Exponential: r(t; -m) = e^{(1-m)t}, scaled value m / (2(m-1)) -> 1/2
    const auto exp_table = admissible_constant(Kernel::exponential(), n2);
    for (std::size_t i = 0; i < n2.size(); ++i)
        CHECK(exp_table.scaled[i] ==
              doctest::Approx(n2[i] / (2.0 * (n2[i] - 1.0))).epsilon(1e-5));
    CHECK(exp_table.c_b == doctest::Approx(0.5).epsilon(1e-3));
    // LinExp: r(t; -m) = e^{-t} sin(sqrt(m) t)/sqrt(m), scaled m/(4 + 4m) -> 1/4
    const auto le_table = admissible_constant(Kernel::lin_exp(), n2);
    for (std::size_t i = 0; i < n2.size(); ++i)
        CHECK(le_table.scaled[i] ==
              doctest::Approx(n2[i] / (4.0 + 4.0 * n2[i])).epsilon(1e-4));
    CHECK(le_table.c_b == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("limit measure for the heat case with constant kernel") {
    // g_inf(lambda) = 1/(2 lambda^2), so g_inf * 2 lambda^2 = 1 on the grid
    const auto rep = limit_measure(SpectralSpec::radial_power(3, 1.0),
                                   Symbol::fractional_power(3, 2.0), Kernel::constant());
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.slowly_increasing);
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
        CHECK(rep.g_inf[i] * 2.0 * rep.lambdas[i] * rep.lambdas[i] ==
              doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("limit measure flags a non-decaying tail") {
    const auto rep = limit_measure(SpectralSpec::radial_power(3, 1.0),
                                   Symbol::fractional_power(3, 2.0), Kernel::linear());
    CHECK(rep.verdict == Verdict::fails);
    CHECK(rep.note.find("tail non-decaying") != std::string::npos);
}

TEST_CASE("h2 probe on the exponential kernel") {
    // r(u; -m)^2 = e^{-2(m-1)u}: for increments well inside the decay scale
    // 1/(2(m-1)) the integral int_s^t r^2 grows linearly, i.e. with delta = 1
    const auto res = h2_verify(Kernel::exponential(), 1.0, {4.0, 16.0},
                               {{0.0, 1e-4}, {0.0, 2e-4}, {1e-4, 4e-4}});
    CHECK(res.ok);
    CHECK(std::isfinite(res.c_delta));
    CHECK(res.c_delta > 0.0);
}

TEST_CASE("holder exponent of a synthetic brownian path") {
    GaussianStream g({5}, 0, 0, 0);
    const std::size_t n = 1 << 14;
    const double h = 1.0 / static_cast<double>(n);
    std::vector<double> path(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) path[i] = path[i - 1] + std::sqrt(h) * g.next();
    const auto est = holder_estimate(path, h);
    CHECK(est.exponent == doctest::Approx(0.5).epsilon(0.12));
    CHECK(est.std_error < 0.05);
}

TEST_CASE("holder estimator refuses short inputs") {
    CHECK_THROWS_AS((void)holder_estimate(std::vector<double>(100, 0.0), 0.01),
                    InsufficientData);
}

TEST_CASE("sampled L2 norm is tight across truncation when the sobolev rule holds") {
    // d = 1, q = 1.5: sobolev_check at alpha = -1 holds, so the mean squared
    // L2 norm of snapshots must stabilize between truncations N and 2N.
    CHECK(sobolev_check(1, 1.5, -1.0).verdict == Verdict::holds);
    const Kernel k = Kernel::constant();
    const Symbol sym = Symbol::fractional_power(1, 2.0);
    const int reps = 400;
    auto mean_sq_norm = [&](int N) {
        const TorusCovariance cov = torus_coefficients(SpectralSpec::torus_decay(1, 1.5), N);
        double acc = 0.0;
        for (int r = 0; r < reps; ++r) {
            const FieldSnapshot s = sample_snapshot(cov, k, sym, 1.0, Regime::zero_initial,
                                                    {2024}, static_cast<std::uint64_t>(r), 1);
            double nrm = s.x0 * s.x0;
            for (std::size_t j = 0; j < s.x1.size(); ++j)
                nrm += s.x1[j] * s.x1[j] + s.x2[j] * s.x2[j];
            acc += nrm;
        }
        return acc / reps;
    };
    const double a = mean_sq_norm(8), b = mean_sq_norm(16);
    CHECK((b - a) / a < 0.05);
}

TEST_CASE("boundary-case spectral mass diverges logarithmically") {
    // d = 2, q = 1: sum of gamma_n grows by a near-constant increment per
    // doubling of the truncation, the signature of log divergence.
    auto mass = [](int N) {
        const TorusCovariance cov = torus_coefficients(SpectralSpec::torus_decay(2, 1.0), N);
        double s = cov.gamma0;
        for (double g : cov.gamma) s += 2.0 * g;
        return s;
    };
    const double d1 = mass(8) - mass(4);
    const double d2 = mass(16) - mass(8);
    const double d3 = mass(32) - mass(16);
    CHECK(d1 > 0.1);
    CHECK(d2 > 0.1);
    CHECK(d3 > 0.1);
    CHECK(std::abs(d2 - d1) / d1 < 0.3);
    CHECK(std::abs(d3 - d2) / d2 < 0.3);
}
