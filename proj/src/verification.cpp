#include "vfl/verification.hpp"

#include <algorithm>
#include <cmath>

#include "vfl/numeric.hpp"

namespace vfl {

namespace {

// index of mode n in the covariance: 0 = zero mode, i+1 = representatives[i]
std::size_t mode_slot(const TorusCovariance& cov, const std::vector<int>& n) {
    if (n.size() != cov.d) throw DimensionMismatch("mode lookup: dim(n) != d");
    if (std::all_of(n.begin(), n.end(), [](int c) { return c == 0; })) return 0;
    for (std::size_t i = 0; i < cov.modes.size(); ++i)
        if (cov.modes[i] == n) return i + 1;
    throw OutOfRange("mode lookup: n is not a stored representative");
}

double slot_variance(const TorusCovariance& cov, const Kernel& k, const Symbol& sym,
                     std::size_t slot, double t, Regime regime) {
    if (slot == 0) return cov.gamma0 * t;  // Brownian zero mode in both regimes
    std::vector<double> lambda(cov.modes[slot - 1].begin(), cov.modes[slot - 1].end());
    return mode_variance(k, sym.eval(lambda), cov.gamma[slot - 1], t, regime);
}

}  // namespace

MCResult mc_mode_variance(const TorusCovariance& cov, const Kernel& k, const Symbol& sym,
                          const std::vector<int>& n, double t, Regime regime,
                          std::size_t reps, NoiseSeed seed, unsigned threads) {
    if (reps < 1000) throw OutOfRange("mc_mode_variance: reps >= 1000 required");
    const std::size_t slot = mode_slot(cov, n);
    const double target = slot_variance(cov, k, sym, slot, t, regime);
    const double sd = std::sqrt(target);

    std::vector<double> squares(reps);
    parallel_for(reps, threads, [&](std::size_t rep) {
        const double x = sd * GaussianStream(seed, slot, slot == 0 ? 0u : 1u, rep).next();
        squares[rep] = x * x;
    });

    MCResult res;
    res.label = "mode_variance";
    res.reps = reps;
    res.target = target;
    res.estimate = pairwise_sum(squares) / static_cast<double>(reps);
    if (target == 0.0) {  // degenerate: null mode
        res.std_error = 0.0;
        res.z = 0.0;
        res.pass = res.estimate == 0.0;
        return res;
    }
    res.std_error = target * std::sqrt(2.0 / static_cast<double>(reps));
    res.z = (res.estimate - target) / res.std_error;
    res.pass = std::abs(res.z) <= res.level;
    return res;
}

MCResult mc_covariance_functional(const TorusCovariance& cov, const Kernel& k,
                                  const Symbol& sym, double t, const TestFunction& phi,
                                  const TestFunction& psi, Regime regime, std::size_t reps,
                                  NoiseSeed seed, unsigned threads) {
    if (reps < 1000) throw OutOfRange("mc_covariance_functional: reps >= 1000 required");
    if (phi.cos_c.size() != cov.modes.size() || phi.sin_c.size() != cov.modes.size() ||
        psi.cos_c.size() != cov.modes.size() || psi.sin_c.size() != cov.modes.size())
        throw DimensionMismatch("mc_covariance_functional: coefficients not aligned with modes");

    // pairing on L2((-pi,pi]^d): <cos n, cos n> = <sin n, sin n> = (2 pi)^d / 2
    double vol = 1.0;
    for (std::size_t c = 0; c < cov.d; ++c) vol *= 2.0 * M_PI;
    const double half = vol / 2.0;

    std::vector<double> var(cov.modes.size() + 1);
    for (std::size_t slot = 0; slot <= cov.modes.size(); ++slot)
        var[slot] = slot_variance(cov, k, sym, slot, t, regime);

    double target = vol * vol * phi.c0 * psi.c0 * var[0];
    for (std::size_t i = 0; i < cov.modes.size(); ++i)
        target += half * half * (phi.cos_c[i] * psi.cos_c[i] + phi.sin_c[i] * psi.sin_c[i]) *
                  var[i + 1];

    std::vector<double> products(reps);
    parallel_for(reps, threads, [&](std::size_t rep) {
        const double x0 = std::sqrt(var[0]) * GaussianStream(seed, 0, 0, rep).next();
        double p = vol * phi.c0 * x0, q = vol * psi.c0 * x0;
        for (std::size_t i = 0; i < cov.modes.size(); ++i) {
            const double sd = std::sqrt(var[i + 1]);
            const double x1 = sd * GaussianStream(seed, i + 1, 1, rep).next();
            const double x2 = sd * GaussianStream(seed, i + 1, 2, rep).next();
            p += half * (phi.cos_c[i] * x1 + phi.sin_c[i] * x2);
            q += half * (psi.cos_c[i] * x1 + psi.sin_c[i] * x2);
        }
        products[rep] = p * q;
    });

    MCResult res;
    res.label = "covariance_functional";
    res.reps = reps;
    res.target = target;
    res.estimate = pairwise_sum(products) / static_cast<double>(reps);
    // empirical standard error of the mean of the products
    double ss = 0.0;
    for (double p : products) {
        const double d = p - res.estimate;
        ss += d * d;
    }
    res.std_error = std::sqrt(ss) / static_cast<double>(reps);
    if (res.std_error == 0.0) {
        res.z = 0.0;
        res.pass = res.estimate == target;
        return res;
    }
    res.z = (res.estimate - target) / res.std_error;
    res.pass = std::abs(res.z) <= res.level;
    return res;
}

CLTSummary clt_band_test(const std::vector<MCResult>& results) {
    if (results.size() < 5) throw InsufficientData("clt_band_test: need >= 5 results");
    CLTSummary s;
    s.total = results.size();
    for (const auto& r : results) {
        if (r.pass) ++s.passes;
        if (std::abs(r.z) > std::abs(s.worst_z)) {
            s.worst_z = r.z;
            s.worst_label = r.label;
        }
    }
    s.pass = 20 * s.passes >= 19 * s.total && std::abs(s.worst_z) <= 6.0;
    return s;
}

}  // namespace vfl
