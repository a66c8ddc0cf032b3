#include "vfl/field.hpp"

#include <algorithm>
#include <cmath>

#include "vfl/numeric.hpp"
#include "vfl/resolvent.hpp"

namespace vfl {

TorusCovariance torus_coefficients(const SpectralSpec& spec, int N) {
    if (!spec.is_torus()) throw Unsupported("torus_coefficients: torus spectral spec required");
    if (N < 1) throw OutOfRange("torus_coefficients: N >= 1 required");
    TorusCovariance cov;
    cov.d = spec.dim();
    cov.N = N;
    cov.modes = representative_modes(spec.dim(), N);
    cov.gamma.resize(cov.modes.size());
    for (std::size_t i = 0; i < cov.modes.size(); ++i) {
        cov.gamma[i] = spec.coefficient(cov.modes[i]);
        if (cov.gamma[i] < 0.0) throw NegativeCoefficient("torus_coefficients: gamma_n < 0");
    }
    cov.gamma0 = spec.coefficient(std::vector<int>(spec.dim(), 0));
    if (cov.gamma0 < 0.0) throw NegativeCoefficient("torus_coefficients: gamma_0 < 0");
    return cov;
}

double mode_variance(const Kernel& k, double v_n, double gamma_n, double t, Regime regime) {
    if (v_n < 0.0) throw OutOfRange("mode_variance: v_n must be >= 0");
    if (gamma_n < 0.0) throw NegativeCoefficient("mode_variance: gamma_n < 0");
    if (gamma_n == 0.0) return 0.0;
    if (regime == Regime::zero_initial) {
        if (!(t > 0.0)) return 0.0;
        if (v_n == 0.0) return gamma_n * t;  // s(.;0) == 1: Brownian mode
        return gamma_n * s_squared_integral(k, v_n, t);
    }
    return gamma_n * squared_tail_integral(k, -v_n);
}

namespace {

double symbol_at(const Symbol& sym, const std::vector<int>& n) {
    std::vector<double> lambda(n.begin(), n.end());
    return sym.eval(lambda);
}

}  // namespace

FieldSnapshot sample_snapshot(const TorusCovariance& cov, const Kernel& k, const Symbol& sym,
                              double t, Regime regime, NoiseSeed seed,
                              std::uint64_t replication, unsigned threads) {
    if (sym.dim() != cov.d) throw DimensionMismatch("sample_snapshot: symbol dim != field dim");
    if (t < 0.0) throw OutOfRange("sample_snapshot: t must be >= 0");
    FieldSnapshot snap;
    snap.t = t;
    snap.x1.assign(cov.modes.size(), 0.0);
    snap.x2.assign(cov.modes.size(), 0.0);
    if (t == 0.0 && regime == Regime::zero_initial) return snap;

    // zero mode: v(0)=0, so s(.;0)==1 and the mode is sqrt(gamma_0) * B(t);
    // the stationary formula keeps the same explicit Brownian term.
    const double var0 = cov.gamma0 * t;
    snap.x0 = std::sqrt(var0) * GaussianStream(seed, 0, 0, replication).next();

    parallel_for(cov.modes.size(), threads, [&](std::size_t i) {
        const double v = symbol_at(sym, cov.modes[i]);
        const double var = mode_variance(k, v, cov.gamma[i], t, regime);
        const double sd = std::sqrt(var);
        snap.x1[i] = sd * GaussianStream(seed, i + 1, 1, replication).next();
        snap.x2[i] = sd * GaussianStream(seed, i + 1, 2, replication).next();
    });
    return snap;
}

namespace {

// Lag weights of the left-point product rule: w[l] = phi(l h), l = 1..lags,
// with phi = s(.; v) for zero_initial and r(.; -v) (ch4 sign) for stationary.
std::vector<double> lag_weights(const Kernel& k, double v, Regime regime, double h,
                                std::size_t lags) {
    const double mu = regime == Regime::zero_initial ? v : -v;
    std::vector<double> w(lags + 1, 0.0);
    const bool closed = regime == Regime::zero_initial
                            ? closed_form_s(k, mu, h).has_value()
                            : closed_form_r(k, mu, h).has_value();
    if (closed) {
        for (std::size_t l = 1; l <= lags; ++l)
            w[l] = regime == Regime::zero_initial ? *closed_form_s(k, mu, h * l)
                                                  : *closed_form_r(k, mu, h * l);
        return w;
    }
    TimeGrid g(h * static_cast<double>(lags), h);
    const auto grid = regime == Regime::zero_initial
                          ? solve_s(k, {mu}, g, 1e-5)
                          : solve_r(k, {mu}, g, 1e-5, RConvention::ch4_plus);
    for (std::size_t l = 1; l <= lags; ++l) w[l] = grid.values[0][l];
    return w;
}

// Detects a geometric lag profile w[l+1] = rho * w[l]; Constant/Exponential
// kernels (and the Brownian zero mode) have one, which turns the O(n^2)
// convolution into an O(n) recursion.
bool geometric_ratio(const std::vector<double>& w, double& rho) {
    if (w.size() < 3 || w[1] == 0.0) return false;
    rho = w[2] / w[1];
    for (std::size_t l = 2; l + 1 < w.size(); ++l) {
        if (w[l] == 0.0) return false;
        if (std::abs(w[l + 1] / w[l] - rho) > 1e-10 * std::max(1.0, std::abs(rho))) return false;
    }
    return true;
}

void mode_trajectory(const Kernel& k, double v, double gamma_n, Regime regime,
                     const TimeGrid& grid, GaussianStream& noise, std::vector<double>& out) {
    const std::size_t n = grid.count();
    out.assign(n, 0.0);
    if (gamma_n == 0.0) {
        for (std::size_t i = 1; i < n; ++i) noise.next();  // keep stream alignment
        return;
    }
    const double h = grid.h;
    const double root = std::sqrt(gamma_n * h);

    // stationary burn-in horizon: extend lags until the weight tail is dead
    std::size_t burn = 0;
    std::vector<double> w = lag_weights(k, v, regime, h, n - 1);
    if (regime == Regime::stationary) {
        double peak = 0.0;
        for (double x : w) peak = std::max(peak, std::abs(x));
        std::size_t lags = n - 1;
        while (std::abs(w.back()) > 1e-13 * std::max(peak, 1.0) && lags < (std::size_t(1) << 24)) {
            lags *= 2;
            w = lag_weights(k, v, regime, h, lags);
        }
        if (std::abs(w.back()) > 1e-13 * std::max(peak, 1.0))
            throw NonIntegrable("simulate_path: stationary weights fail to decay");
        burn = w.size() - n;
    }

    double rho = 0.0;
    if (geometric_ratio(w, rho) && std::abs(rho) <= 1.0) {
        // X_{i+1} = rho X_i + w[1] sqrt(gamma h) xi_i
        double x = 0.0;
        for (std::size_t b = 0; b < burn; ++b) x = rho * x + w[1] * root * noise.next();
        out[0] = regime == Regime::stationary ? x : 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            x = rho * x + w[1] * root * noise.next();
            out[i] = x;
        }
        return;
    }

    // direct windowed convolution; window = effective support of the weights
    double peak = 0.0;
    for (double x : w) peak = std::max(peak, std::abs(x));
    std::size_t window = w.size() - 1;
    while (window > 1 && std::abs(w[window]) < 1e-14 * peak) --window;
    std::vector<double> db(burn + n - 1);
    for (double& x : db) x = root * noise.next();
    for (std::size_t i = (regime == Regime::stationary ? 0 : 1); i < n; ++i) {
        const std::size_t steps = burn + i;  // increments before t_i
        double acc = 0.0;
        const std::size_t lmax = std::min(window, steps);
        for (std::size_t l = 1; l <= lmax; ++l) acc += w[l] * db[steps - l];
        out[i] = acc;
    }
}

}  // namespace

FieldPath simulate_path(const TorusCovariance& cov, const Kernel& k, const Symbol& sym,
                        const TimeGrid& grid, NoiseSeed seed, Regime regime, unsigned threads) {
    if (sym.dim() != cov.d) throw DimensionMismatch("simulate_path: symbol dim != field dim");
    FieldPath path;
    path.grid = grid;
    path.kernel_name = k.name();
    path.symbol_name = sym.name();
    path.regime = regime;
    path.seed = seed.master;
    path.d = cov.d;
    path.N = cov.N;
    path.modes = cov.modes;
    path.x1.assign(cov.modes.size(), {});
    path.x2.assign(cov.modes.size(), {});

    GaussianStream zero_noise(seed, 0, 0, 0);
    mode_trajectory(k, 0.0, cov.gamma0, Regime::zero_initial, grid, zero_noise, path.x0);

    parallel_for(cov.modes.size(), threads, [&](std::size_t i) {
        const double v = symbol_at(sym, cov.modes[i]);
        GaussianStream n1(seed, i + 1, 1, 0), n2(seed, i + 1, 2, 0);
        mode_trajectory(k, v, cov.gamma[i], regime, grid, n1, path.x1[i]);
        mode_trajectory(k, v, cov.gamma[i], regime, grid, n2, path.x2[i]);
    });
    return path;
}

std::vector<double> synthesize_grid(const FieldSnapshot& snap,
                                    const std::vector<std::vector<int>>& modes,
                                    std::size_t d, int N, int M) {
    if (M <= 2 * N) throw AliasingRisk("synthesize_grid: need M > 2N grid points per axis");
    std::size_t total = 1;
    for (std::size_t c = 0; c < d; ++c) total *= static_cast<std::size_t>(M);
    std::vector<double> out(total, snap.x0);
    std::vector<double> theta(d, 0.0);
    for (std::size_t j = 0; j < total; ++j) {
        std::size_t rem = j;
        for (std::size_t c = d; c-- > 0;) {
            const int jc = static_cast<int>(rem % static_cast<std::size_t>(M));
            rem /= static_cast<std::size_t>(M);
            theta[c] = -M_PI + 2.0 * M_PI * (jc + 1) / static_cast<double>(M);
        }
        double val = 0.0;
        for (std::size_t m = 0; m < modes.size(); ++m) {
            double phase = 0.0;
            for (std::size_t c = 0; c < d; ++c) phase += modes[m][c] * theta[c];
            val += std::cos(phase) * snap.x1[m] + std::sin(phase) * snap.x2[m];
        }
        out[j] += val;
    }
    return out;
}

}  // namespace vfl
