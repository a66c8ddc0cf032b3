#include <cmath>
#include <vector>

#include <doctest.h>

#include "vfl/field.hpp"
#include "vfl/numeric.hpp"
#include "vfl/rng.hpp"
#include "vfl/spectral.hpp"

using namespace vfl;

TEST_CASE("gaussian stream is keyed and reproducible") {
    GaussianStream a({42}, 3, 1, 7);
    GaussianStream b({42}, 3, 1, 7);
    GaussianStream c({42}, 3, 1, 8);
    bool differs = false;
    for (int i = 0; i < 16; ++i) {
        const double x = a.next();
        CHECK(x == b.next());
        differs = differs || (x != c.next());
    }
    CHECK(differs);
}

TEST_CASE("gaussian stream moments") {
    GaussianStream g({7}, 0, 0, 0);
    const std::size_t n = 200000;
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.next();
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("representative modes exclude zero and halve the lattice") {
    const auto m1 = representative_modes(1, 3);
    CHECK(m1 == std::vector<std::vector<int>>{{1}, {2}, {3}});
    const auto m2 = representative_modes(2, 1);
    // (2N+1)^d - 1 lattice points split into +-n pairs
    CHECK(m2.size() == 4);
    for (const auto& n : m2) CHECK((n[0] > 0 || (n[0] == 0 && n[1] > 0)));
}

TEST_CASE("torus coefficients") {
    const auto cov = torus_coefficients(SpectralSpec::torus_decay(1, 1.0), 2);
    CHECK(cov.gamma0 == doctest::Approx(1.0));
    REQUIRE(cov.gamma.size() == 2);
    CHECK(cov.gamma[0] == doctest::Approx(0.5));
    CHECK(cov.gamma[1] == doctest::Approx(0.2));
}

TEST_CASE("mode variance closed-form spot checks") {
    // zero-initial Constant kernel: gamma int_0^t e^{-2 v u} du
    CHECK(mode_variance(Kernel::constant(), 1.0, 1.0, 1.0, Regime::zero_initial) ==
          doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-9));
    // stationary Exponential kernel, v = 4: int_0^inf e^{-6u} du = 1/6
    CHECK(mode_variance(Kernel::exponential(), 4.0, 1.0, 0.0, Regime::stationary) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-6));
}

TEST_CASE("zero-initial snapshot at t=0 vanishes") {
    const auto cov = torus_coefficients(SpectralSpec::torus_decay(1, 1.0), 2);
    const auto snap = sample_snapshot(cov, Kernel::constant(),
                                      Symbol::fractional_power(1, 2.0), 0.0,
                                      Regime::zero_initial, {42});
    CHECK(snap.x0 == 0.0);
    for (double v : snap.x1) CHECK(v == 0.0);
}

TEST_CASE("path sampling is deterministic across thread counts") {
    const auto cov = torus_coefficients(SpectralSpec::torus_decay(1, 1.0), 4);
    const auto sym = Symbol::fractional_power(1, 2.0);
    const TimeGrid grid(1.0, 1.0 / 64.0);
    const auto p1 = simulate_path(cov, Kernel::exponential(), sym, grid, {42},
                                  Regime::zero_initial, 1);
    const auto p4 = simulate_path(cov, Kernel::exponential(), sym, grid, {42},
                                  Regime::zero_initial, 4);
    CHECK(p1.x0 == p4.x0);
    for (std::size_t m = 0; m < p1.x1.size(); ++m) {
        CHECK(p1.x1[m] == p4.x1[m]);
        CHECK(p1.x2[m] == p4.x2[m]);
    }
}

TEST_CASE("zero mode is a scaled brownian motion") {
    TorusCovariance cov;
    cov.d = 1;
    cov.N = 1;
    cov.gamma0 = 4.0;
    const TimeGrid grid(1.0, 1.0 / 4096.0);
    const auto p = simulate_path(cov, Kernel::constant(), Symbol::fractional_power(1, 2.0),
                                 grid, {11}, Regime::zero_initial);
    double sq = 0.0;
    for (std::size_t i = 1; i < p.x0.size(); ++i) {
        const double d = p.x0[i] - p.x0[i - 1];
        sq += d * d;
    }
    // quadratic variation ~ gamma0 * t_max, chi-square band
    CHECK(sq == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("terminal path variance matches mode_variance") {
    // 2000 replications of X_n^1(1) for the Exponential kernel, mode n=1
    const auto cov = torus_coefficients(SpectralSpec::torus_decay(1, 1.0), 1);
    const auto sym = Symbol::fractional_power(1, 2.0);
    const TimeGrid grid(1.0, 1.0 / 64.0);
    const double target = cov.gamma[0] *
        mode_variance(Kernel::exponential(), 1.0, 1.0, 1.0, Regime::zero_initial);
    double sq = 0.0;
    const std::size_t reps = 2000;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto p = simulate_path(cov, Kernel::exponential(), sym, grid, {1000 + rep});
        const double x = p.x1[0].back();
        sq += x * x;
    }
    const double est = sq / reps;
    const double se = target * std::sqrt(2.0 / reps);
    CHECK(std::abs(est - target) < 4.0 * se);
}

TEST_CASE("stationary path is variance-stationary") {
    // single mode n = 2 (v = 4 > 1, so the Exponential-kernel r is integrable)
    TorusCovariance cov;
    cov.d = 1;
    cov.N = 2;
    cov.gamma0 = 0.0;
    cov.modes = {{2}};
    cov.gamma = {0.2};
    const auto sym = Symbol::fractional_power(1, 2.0);
    const TimeGrid grid(0.5, 1.0 / 128.0);
    const double target = cov.gamma[0] *
        mode_variance(Kernel::exponential(), 4.0, 1.0, 0.0, Regime::stationary);
    double sq0 = 0.0, sq1 = 0.0;
    const std::size_t reps = 3000;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto p = simulate_path(cov, Kernel::exponential(), sym, grid, {rep},
                                     Regime::stationary);
        sq0 += p.x1[0].front() * p.x1[0].front();
        sq1 += p.x1[0].back() * p.x1[0].back();
    }
    const double se = target * std::sqrt(2.0 / reps);
    CHECK(std::abs(sq0 / reps - target) < 4.0 * se);
    CHECK(std::abs(sq1 / reps - target) < 4.0 * se);
}

TEST_CASE("grid synthesis guards against aliasing") {
    const auto cov = torus_coefficients(SpectralSpec::torus_decay(1, 1.0), 4);
    const auto snap = sample_snapshot(cov, Kernel::constant(),
                                      Symbol::fractional_power(1, 2.0), 1.0,
                                      Regime::zero_initial, {42});
    CHECK_THROWS_AS((void)synthesize_grid(snap, cov.modes, 1, 4, 8), AliasingRisk);
    const auto vals = synthesize_grid(snap, cov.modes, 1, 4, 16);
    CHECK(vals.size() == 16);
}

TEST_CASE("symbols are even: v(lambda) = v(-lambda)") {
    const Symbol syms[] = {
        Symbol::fractional_power(2, 1.3),
        Symbol::quadratic(2, {2.0, 0.5, 0.5, 1.0}),
        Symbol::levy_khinchin(2, {1.0, 0.0, 0.0, 1.0}, {{{0.7, -0.3}, 0.4}, {{1.1, 2.0}, 0.9}}),
    };
    const std::vector<std::vector<double>> points = {{0.3, -1.2}, {2.0, 0.0}, {-0.5, 4.4}};
    for (const Symbol& v : syms) {
        for (const auto& lam : points) {
            std::vector<double> neg = {-lam[0], -lam[1]};
            CHECK(v.eval(lam) == doctest::Approx(v.eval(neg)).epsilon(1e-14));
        }
        CHECK(v.eval_radial(1.5) == doctest::Approx(v.eval_radial(-1.5)).epsilon(1e-14));
    }
}

TEST_CASE("snapshot coefficients are gaussian and cross-mode independent") {
    const TorusCovariance cov = torus_coefficients(SpectralSpec::torus_decay(1, 1.0), 2);
    const Symbol sym = Symbol::fractional_power(1, 2.0);
    const Kernel k = Kernel::constant();
    const int reps = 10000;
    std::vector<std::vector<double>> a(cov.modes.size());
    for (int r = 0; r < reps; ++r) {
        const FieldSnapshot snap = sample_snapshot(cov, k, sym, 1.0, Regime::zero_initial,
                                                   {99}, static_cast<std::uint64_t>(r), 1);
        for (std::size_t j = 0; j < cov.modes.size(); ++j) a[j].push_back(snap.x1[j]);
    }
    for (auto& xs : a) {
        double m = 0.0;
        for (double x : xs) m += x;
        m /= reps;
        double v = 0.0, s3 = 0.0, s4 = 0.0;
        for (double x : xs) {
            const double c = x - m;
            v += c * c;
            s3 += c * c * c;
            s4 += c * c * c * c;
        }
        v /= reps;
        const double skew = s3 / reps / std::pow(v, 1.5);
        const double kurt = s4 / reps / (v * v);
        CHECK(std::abs(skew) < 5.0 * std::sqrt(6.0 / reps));
        CHECK(std::abs(kurt - 3.0) < 5.0 * std::sqrt(24.0 / reps));
    }
    // cross-correlation of distinct modes within 4 sigma of zero
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            double c = 0.0;
            for (int r = 0; r < reps; ++r) c += a[i][r] * a[j][r];
            double vi = 0.0, vj = 0.0;
            for (int r = 0; r < reps; ++r) {
                vi += a[i][r] * a[i][r];
                vj += a[j][r] * a[j][r];
            }
            const double rho = c / std::sqrt(vi * vj);
            CHECK(std::abs(rho) < 4.0 / std::sqrt(static_cast<double>(reps)));
        }
}

TEST_CASE("heat-case mode variance is nondecreasing and matches the closed form") {
    const Kernel k = Kernel::constant();
    const double v = 3.0, g = 0.7;
    double prev = 0.0;
    for (double t = 0.25; t <= 4.0; t += 0.25) {
        const double var = mode_variance(k, v, g, t, Regime::zero_initial);
        CHECK(var >= prev - 1e-12);
        CHECK(var == doctest::Approx(g * (1.0 - std::exp(-2.0 * v * t)) / (2.0 * v)).epsilon(1e-8));
        prev = var;
    }
}
