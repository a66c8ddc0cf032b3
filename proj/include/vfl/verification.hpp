#pragma once

#include <string>
#include <vector>

#include "vfl/field.hpp"

namespace vfl {

/// One Monte Carlo confirmation: estimator vs analytic target with a CLT
/// acceptance band.
struct MCResult {
    std::string label;
    double estimate = 0.0;
    double std_error = 0.0;
    double target = 0.0;
    double z = 0.0;
    std::size_t reps = 0;
    double level = 4.0;  // sigma acceptance band
    bool pass = true;
};

/// Test function on the torus, aligned with TorusCovariance::modes:
/// phi(theta) = c0 + sum_n [cos_c[n] cos(n,theta) + sin_c[n] sin(n,theta)].
struct TestFunction {
    double c0 = 0.0;
    std::vector<double> cos_c, sin_c;
};

/// Sample variance of X_n^1 over independent replications against
/// mode_variance, chi-square standard error target*sqrt(2/reps).
MCResult mc_mode_variance(const TorusCovariance& cov, const Kernel& k, const Symbol& sym,
                          const std::vector<int>& n, double t, Regime regime,
                          std::size_t reps, NoiseSeed seed, unsigned threads = 1);

/// Empirical E[<X,phi><X,psi>] (L2 torus pairing) against the Fourier-domain
/// target sum of gamma-weighted mode variances.
MCResult mc_covariance_functional(const TorusCovariance& cov, const Kernel& k,
                                  const Symbol& sym, double t, const TestFunction& phi,
                                  const TestFunction& psi, Regime regime, std::size_t reps,
                                  NoiseSeed seed, unsigned threads = 1);

/// Batch acceptance: >= 95% of results within their band and no |z| > 6.
struct CLTSummary {
    std::size_t total = 0;
    std::size_t passes = 0;
    double worst_z = 0.0;
    std::string worst_label;
    bool pass = false;
};

CLTSummary clt_band_test(const std::vector<MCResult>& results);

}  // namespace vfl
