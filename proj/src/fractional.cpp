#include "vfl/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vfl/numeric.hpp"

namespace vfl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Power series sum_k z^k / Gamma(alpha k + 1). Converges everywhere; for
// z < 0 the alternating terms cancel down from a peak of size ~exp(|z|^{1/alpha}),
// which bounds the achievable absolute accuracy in doubles.
double ml_series(double alpha, double z, double* err_estimate = nullptr) {
    double sum = 1.0, term = 1.0, peak = 1.0;
    for (int k = 1; k < 512; ++k) {
        term = std::pow(z, k) * reciprocal_gamma(alpha * k + 1.0);
        sum += term;
        peak = std::max(peak, std::abs(term));
        if (std::abs(term) < kEps * peak && k > 4) break;
    }
    if (err_estimate) *err_estimate = kEps * peak;
    return sum;
}

// Asymptotic expansion for z << 0: -sum_{k>=1} z^{-k}/Gamma(1-alpha k), with
// optimal truncation at the smallest term; for alpha in (1,2) the pair of
// complex exponentials surviving on the negative axis is added.
double ml_asymptotic(double alpha, double z, double* err_estimate = nullptr) {
    double sum = 0.0;
    double smallest = std::numeric_limits<double>::infinity();
    double zp = 1.0;
    for (int k = 1; k < 256; ++k) {
        zp *= z;  // z^k
        const double term = -reciprocal_gamma(1.0 - alpha * k) / zp;
        const double mag = std::abs(term);
        if (mag == 0.0) continue;  // exact zero at a Gamma pole, not the minimum
        if (mag > smallest) break;  // divergent asymptotic tail: stop at the minimum
        sum += term;
        smallest = mag;
        if (mag < 1e-18 * std::max(1.0, std::abs(sum))) break;
    }
    if (alpha > 1.0) {
        const double r = std::pow(-z, 1.0 / alpha);
        sum += (2.0 / alpha) * std::exp(r * std::cos(M_PI / alpha)) *
               std::cos(r * std::sin(M_PI / alpha));
    }
    if (err_estimate) *err_estimate = std::isfinite(smallest) ? smallest : 1.0;
    return sum;
}

}  // namespace

double mittag_leffler(double alpha, double z) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw OutOfRange("mittag_leffler: alpha must lie in (0,2]");
    if (z == 0.0) return 1.0;
    if (alpha == 1.0) return std::exp(z);
    if (alpha == 2.0) return z > 0.0 ? std::cosh(std::sqrt(z)) : std::cos(std::sqrt(-z));
    if (z > 0.0) return ml_series(alpha, z);  // all-positive terms, no cancellation

    constexpr double R = 5.0;  // strategy switch radius
    // Evaluate both branches with their error estimates and keep the better
    // one. The series alone cannot be trusted up to a fixed radius: its
    // cancellation grows like exp(|z|^{1/alpha}), so for small alpha it dies
    // well inside R while the asymptotic expansion is already excellent.
    double series_err = std::numeric_limits<double>::infinity();
    double asym_err = 0.0;
    double s = 0.0;
    if (-z <= R) s = ml_series(alpha, z, &series_err);
    const double a = ml_asymptotic(alpha, z, &asym_err);
    if (series_err < 5e-9 && asym_err < 5e-9 && std::abs(s - a) > 1e-8)
        throw AccuracyLoss("mittag_leffler: strategies disagree in overlap band");
    // nan-safe selection: an untrustworthy series error falls through to the
    // asymptotic value
    return series_err < asym_err ? s : a;
}

namespace {

// Wright series with an error estimate from the alternating-term peak.
double wright_series(double gamma, double z, double* err_estimate) {
    double sum = reciprocal_gamma(1.0 - gamma);  // n = 0 term
    if (z == 0.0) {
        if (err_estimate) *err_estimate = kEps;
        return sum;
    }
    double peak = std::abs(sum);
    bool decreasing_seen = false;
    double prev_mag = std::abs(sum);
    const double lz = std::log(z);
    constexpr int K = 400;
    int n = 1;
    for (; n < K; ++n) {
        // term_n = (-z)^n / (n! Gamma(1-gamma-gamma n)), assembled in log space
        // so that large-n factorials cannot overflow before the break triggers
        const double x = 1.0 - gamma - gamma * n;
        if (x == std::floor(x) && x <= 0.0) continue;  // Gamma pole: exact zero term
        const double sp = std::sin(M_PI * x);
        const double logmag = n * lz - std::lgamma(n + 1.0) + std::lgamma(1.0 - x) +
                              std::log(std::abs(sp) / M_PI);
        const double mag = std::exp(logmag);
        const double sign = ((n % 2 != 0) ? -1.0 : 1.0) * (sp < 0.0 ? -1.0 : 1.0);
        sum += sign * mag;
        peak = std::max(peak, mag);
        if (mag < prev_mag) decreasing_seen = true;
        if (decreasing_seen && mag < 1e-10 * std::max(1.0, peak) && mag < 1e-12) break;
        prev_mag = mag;
    }
    if (n >= K && !decreasing_seen)
        throw SeriesDivergence("wright_density: terms not decreasing before cutoff; rescale z");
    // roundoff accumulates across the summed terms, not just at the peak
    if (err_estimate) *err_estimate = kEps * peak * std::max(1, n);
    return sum;
}

}  // namespace

double wright_density(double gamma, double z) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw OutOfRange("wright_density: gamma must lie in (0,1)");
    if (z < 0.0) throw OutOfRange("wright_density: z must be >= 0");
    double err = 0.0;
    const double v = wright_series(gamma, z, &err);
    if (v < 0.0) {
        if (v < -std::max(1e-10, 10.0 * err))
            throw AccuracyLoss("wright_density: negative value beyond roundoff tolerance");
        return 0.0;
    }
    return v;
}

double alpha_resolvent_s(double alpha, double mu, double t) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw OutOfRange("alpha_resolvent_s: alpha must lie in (0,2)");
    if (mu < 0.0) throw OutOfRange("alpha_resolvent_s: mu must be >= 0");
    if (t < 0.0) throw OutOfRange("alpha_resolvent_s: t must be >= 0");
    if (t == 0.0 || mu == 0.0) return 1.0;
    return mittag_leffler(alpha, -mu * std::pow(t, alpha));
}

double subordination_check(double alpha, double beta, double mu, double t,
                           std::size_t quad_nodes) {
    const double gamma = alpha / beta;
    if (!(gamma > 0.0 && gamma < 1.0))
        throw OutOfRange("subordination_check: gamma = alpha/beta must lie in (0,1)");
    if (!(t > 0.0)) throw OutOfRange("subordination_check: t must be > 0");
    if (mu < 0.0) throw OutOfRange("subordination_check: mu must be >= 0");

    const double lhs = alpha_resolvent_s(alpha, mu, t);
    const double tg = std::pow(t, gamma);
    const auto s_beta = [&](double s) {
        return beta == 1.0 ? std::exp(-mu * s) : std::cos(std::sqrt(mu) * s);
    };
    // after the substitution u = s t^{-gamma} the weight is Phi_gamma(u) du;
    // cap the horizon where the Wright series itself runs out of accuracy
    const auto integrand = [&](double u) {
        double err = 0.0;
        double w = wright_series(gamma, u, &err);
        // beyond the series' accuracy the true density is far below the noise
        // floor, so dropping it costs less than keeping the noise
        if (err > 1e-9) w = 0.0;
        return std::max(w, 0.0) * s_beta(u * tg);
    };
    double horizon = 2.0;
    double prev = simpson(integrand, 0.0, horizon, quad_nodes);
    for (int pass = 0; pass < 8; ++pass) {
        // stop growing once the Wright weight at the edge is negligible or the
        // series there is no longer trustworthy
        double edge_err = 0.0;
        const double edge = wright_series(gamma, horizon, &edge_err);
        if (std::abs(edge) < 1e-12 || edge_err > 1e-9) return std::abs(lhs - prev);
        horizon *= 2.0;
        const double next = simpson(integrand, 0.0, horizon,
                                    quad_nodes * static_cast<std::size_t>(1) << (pass + 1));
        if (std::abs(next - prev) < 1e-8) return std::abs(lhs - next);
        prev = next;
    }
    throw QuadratureStall("subordination_check: horizon doubling did not stabilize");
}

double exponential_bound_constant(double alpha, const std::vector<double>& omegas,
                                  const std::vector<double>& ts) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw OutOfRange("exponential_bound_constant: alpha must lie in (0,2]");
    double worst = 0.0;
    for (double w : omegas) {
        if (w <= 0.0) throw OutOfRange("exponential_bound_constant: omega must be > 0");
        for (double t : ts) {
            if (t < 0.0) throw OutOfRange("exponential_bound_constant: t must be >= 0");
            // growing branch: the plain series has all-positive terms, no cancellation
            const double z = w * std::pow(t, alpha);
            double sum = 1.0, term = 1.0;
            for (int k = 1; k < 512 && term > kEps * sum; ++k) {
                term = std::pow(z, k) * reciprocal_gamma(alpha * k + 1.0);
                sum += term;
            }
            worst = std::max(worst, sum / std::exp(std::pow(w, 1.0 / alpha) * t));
        }
    }
    return worst;
}

}  // namespace vfl
