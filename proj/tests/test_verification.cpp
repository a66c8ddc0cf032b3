#include <cmath>
#include <vector>

#include <doctest.h>

#include "vfl/spectral.hpp"
#include "vfl/verification.hpp"

using namespace vfl;

namespace {

TorusCovariance heat_cov() { return torus_coefficients(SpectralSpec::torus_decay(1, 1.0), 4); }

}  // namespace

TEST_CASE("mode variance estimator passes its own band") {
    const auto cov = heat_cov();
    const auto r = mc_mode_variance(cov, Kernel::constant(), Symbol::fractional_power(1, 2.0),
                                    {1}, 1.0, Regime::zero_initial, 4000, {42});
    CHECK(std::abs(r.z) <= 4.0);
    CHECK(r.pass);
    CHECK(r.target == doctest::Approx(cov.gamma[0] * (1.0 - std::exp(-2.0)) / 2.0));
}

TEST_CASE("estimates are bit-identical across thread counts") {
    const auto cov = heat_cov();
    const auto sym = Symbol::fractional_power(1, 2.0);
    const auto a = mc_mode_variance(cov, Kernel::constant(), sym, {2}, 1.0,
                                    Regime::zero_initial, 2000, {42}, 1);
    const auto b = mc_mode_variance(cov, Kernel::constant(), sym, {2}, 1.0,
                                    Regime::zero_initial, 2000, {42}, 8);
    CHECK(a.estimate == b.estimate);
    CHECK(a.z == b.z);
}

TEST_CASE("disjoint-mode functionals are uncorrelated") {
    const auto cov = heat_cov();
    TestFunction phi, psi;
    phi.cos_c.assign(cov.modes.size(), 0.0);
    phi.sin_c.assign(cov.modes.size(), 0.0);
    psi = phi;
    phi.cos_c[0] = 1.0;
    psi.cos_c[2] = 1.0;
    const auto r = mc_covariance_functional(cov, Kernel::constant(),
                                            Symbol::fractional_power(1, 2.0), 1.0, phi, psi,
                                            Regime::zero_initial, 4000, {42});
    CHECK(r.target == 0.0);
    CHECK(std::abs(r.z) <= 4.0);
}

TEST_CASE("matched functional reproduces the parseval target") {
    const auto cov = heat_cov();
    TestFunction phi;
    phi.cos_c.assign(cov.modes.size(), 0.0);
    phi.sin_c.assign(cov.modes.size(), 0.0);
    phi.cos_c[1] = 2.0;
    const auto r = mc_covariance_functional(cov, Kernel::constant(),
                                            Symbol::fractional_power(1, 2.0), 1.0, phi, phi,
                                            Regime::zero_initial, 4000, {42});
    CHECK(r.target > 0.0);
    CHECK(std::abs(r.z) <= 4.0);
}

TEST_CASE("clt band aggregation") {
    std::vector<MCResult> rs(6);
    for (auto& r : rs) {
        r.z = 1.0;
        r.pass = true;
    }
    CHECK(clt_band_test(rs).pass);
    rs[0].pass = false;
    rs[0].z = 5.0;  // 5/6 < 95%
    CHECK_FALSE(clt_band_test(rs).pass);
    CHECK_THROWS_AS((void)clt_band_test(std::vector<MCResult>(3)), InsufficientData);
}
