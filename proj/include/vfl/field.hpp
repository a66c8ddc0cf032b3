#pragma once

#include <string>
#include <vector>

#include "vfl/grid.hpp"
#include "vfl/kernel.hpp"
#include "vfl/rng.hpp"
#include "vfl/spectral.hpp"

namespace vfl {

/// Initial-condition regime of the mode laws: zero initial datum (spectral
/// measure variance over [0,t]) or the stationary solution driven from -inf
/// (kernel-resolvent tail variance).
enum class Regime { zero_initial, stationary };

/// Truncated torus covariance: coefficients gamma_n on the representative
/// half-lattice Z_s^d (max |n_i| <= N) plus the zero mode.
struct TorusCovariance {
    std::size_t d = 1;
    int N = 1;
    double gamma0 = 0.0;
    std::vector<std::vector<int>> modes;  // representatives, n != 0
    std::vector<double> gamma;            // aligned with modes
};

/// One time slice of the field: cosine/sine coefficients per representative
/// mode plus the constant mode.
struct FieldSnapshot {
    double t = 0.0;
    double x0 = 0.0;
    std::vector<double> x1, x2;  // aligned with TorusCovariance::modes
};

/// Time-coupled trajectories of the mode coefficients on a shared grid.
struct FieldPath {
    TimeGrid grid;
    std::string kernel_name, symbol_name;
    Regime regime = Regime::zero_initial;
    std::uint64_t seed = 0;
    std::size_t d = 1;
    int N = 1;
    std::vector<std::vector<int>> modes;
    std::vector<double> x0;                // per node
    std::vector<std::vector<double>> x1;   // [mode][node]
    std::vector<std::vector<double>> x2;
};

/// Populates gamma_n on representatives for a torus spectral spec.
TorusCovariance torus_coefficients(const SpectralSpec& spec, int N);

/// Variance of one mode coefficient:
///   zero_initial: gamma_n * integral_0^t s(sigma; v_n)^2 dsigma,
///   stationary:   gamma_n * integral_0^inf r(sigma; -v_n)^2 dsigma  (ch4 sign).
double mode_variance(const Kernel& k, double v_n, double gamma_n, double t, Regime regime);

/// Draws all mode coefficients independently at time t with the exact
/// per-mode law. `replication` selects an independent copy under one seed.
FieldSnapshot sample_snapshot(const TorusCovariance& cov, const Kernel& k, const Symbol& sym,
                              double t, Regime regime, NoiseSeed seed,
                              std::uint64_t replication = 0, unsigned threads = 1);

/// Simulates coupled trajectories by the left-point product rule
/// X_n(t_i) = sqrt(gamma_n) * sum_{j<i} s(t_i - t_j; v_n) dB_j (zero_initial)
/// and the analogous r-weighted sum with a burn-in window for stationary.
FieldPath simulate_path(const TorusCovariance& cov, const Kernel& k, const Symbol& sym,
                        const TimeGrid& grid, NoiseSeed seed,
                        Regime regime = Regime::zero_initial, unsigned threads = 1);

/// Real-space synthesis on the uniform M^d grid over (-pi,pi]^d (row-major).
/// Requires M > 2N so that distinct modes stay distinct on the grid.
std::vector<double> synthesize_grid(const FieldSnapshot& snap,
                                    const std::vector<std::vector<int>>& modes,
                                    std::size_t d, int N, int M);

}  // namespace vfl
