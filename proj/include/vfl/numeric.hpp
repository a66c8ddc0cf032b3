#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace vfl {

/// Pairwise-tree sum; associativity is fixed so results do not depend on
/// chunking or thread count.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

/// Composite Simpson on [a,b] with n subintervals (n made even).
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i < n; i += 2) odd += f(a + h * static_cast<double>(i));
    for (std::size_t i = 2; i < n; i += 2) even += f(a + h * static_cast<double>(i));
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Ordinary least squares y ~ intercept + slope * x.
inline LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    LinearFit f;
    if (denom == 0.0 || n < 2) return f;
    f.slope = (dn * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / dn;
    if (n > 2) {
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = y[i] - f.intercept - f.slope * x[i];
            ss += e * e;
        }
        f.slope_stderr = std::sqrt(ss / (dn - 2.0) * dn / denom);
    }
    return f;
}

/// Runs fn(i) for i in [0, count) over at most `threads` workers with a
/// static block partition. fn must write only to disjoint slots.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

/// 1/Gamma(x) for arbitrary real x; exact zero at the poles x = 0, -1, -2, ...
inline double reciprocal_gamma(double x) {
    if (x > 0.5) return 1.0 / std::tgamma(x);
    if (x == std::floor(x)) return 0.0;  // pole: sin(pi x) alone is only ~eps there
    const double s = std::sin(M_PI * x);
    return s / M_PI * std::exp(std::lgamma(1.0 - x));
}

}  // namespace vfl
