#include "vfl/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "vfl/fractional.hpp"
#include "vfl/numeric.hpp"

namespace vfl {

namespace {

// Product-trapezoid convolution weights on a uniform grid: the convolution
// (a*x)(t_i) of the piecewise-linear interpolant of x is
//   sum_{k=1..i} wl[k] * x_{i-k} + wr[k] * x_{i-k+1},
// with exact kernel moments on each subinterval.
struct ConvWeights {
    std::vector<double> wl, wr;  // index k = 1..n (index 0 unused)
};

ConvWeights conv_weights(const Kernel& kern, double h, std::size_t n) {
    ConvWeights w;
    w.wl.assign(n + 1, 0.0);
    w.wr.assign(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        double m0 = 0.0, m1 = 0.0;
        kern.moments(h, k, m0, m1);
        const double lo = (static_cast<double>(k) - 1.0) * h;
        const double hi = static_cast<double>(k) * h;
        w.wl[k] = (m1 - lo * m0) / h;
        w.wr[k] = (hi * m0 - m1) / h;
    }
    return w;
}

// Solves x + c (a*x) = f on the grid; f given by node values.
std::vector<double> solve_linear_volterra(const ConvWeights& w, double c,
                                          const std::vector<double>& f) {
    const std::size_t n = f.size();
    std::vector<double> x(n);
    x[0] = f[0];
    const double diag = 1.0 + c * w.wr[1];
    if (std::abs(diag) < 1e-12)
        throw ToleranceNotMet("product-integration step is singular; reduce h");
    for (std::size_t i = 1; i < n; ++i) {
        double rest = 0.0;
        for (std::size_t k = 1; k <= i; ++k) {
            rest += w.wl[k] * x[i - k];
            if (k >= 2) rest += w.wr[k] * x[i - k + 1];
        }
        x[i] = (f[i] - c * rest) / diag;
    }
    return x;
}

// A-posteriori residual by step doubling: re-solve on the 2x refined grid and
// compare at the shared nodes. This estimate is independent of the original
// recursion and decays at the scheme's convergence rate, O(h^2) for smooth
// kernels and O(h^{1+alpha}) for Power(alpha < 1). A pointwise defect of
// the piecewise-linear solution cannot serve here: evaluated at the nodes it
// vanishes identically (the product weights integrate piecewise-linear data
// exactly), and at half-nodes it is dominated by the O(h^alpha) interpolation
// error of a weakly singular solution rather than by the scheme.
//
// For Power(alpha < 1) the nodal difference is taken in the weighted norm
// max_i min(1, t_i^{1-alpha}) |x_h - x_{h/2}|(t_i): the solution derivative
// blows up like t^{alpha-1}, so the unweighted error at the first few nodes
// (t ~ h) is only O(h^{2 alpha}) while the weighted sup stays O(h^{1+alpha}).
double equation_residual(const ConvWeights& w2, double c, const std::vector<double>& x,
                         const TimeGrid& g2, const std::function<double(double)>& f,
                         double weight_exp) {
    const std::size_t m = g2.count();
    std::vector<double> f2(m);
    for (std::size_t i = 0; i < m; ++i) f2[i] = f(g2.node(i));
    const std::vector<double> x2 = solve_linear_volterra(w2, c, f2);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = g2.node(2 * i);
        const double w = weight_exp > 0.0 ? std::min(1.0, std::pow(t, weight_exp)) : 1.0;
        worst = std::max(worst, w * std::abs(x[i] - x2[2 * i]));
    }
    return worst;
}

struct EquationSpec {
    // c in x + c(a*x) = f, plus the right-hand side.
    double c;
    std::function<double(double)> f;
};

EquationSpec make_equation(const Kernel& kern, double mu, bool want_s, RConvention conv) {
    if (want_s) return {mu, [](double) { return 1.0; }};
    const double c = (conv == RConvention::ch1_minus) ? mu : -mu;
    return {c, [kern](double t) { return kern.eval(t); }};
}

ResolventGrid solve_impl(const Kernel& kern, std::vector<double> mu_list, const TimeGrid& grid,
                         double tol, bool want_s, RConvention conv, unsigned threads) {
    if (!want_s && !kern.finite_at_zero())
        throw SingularAtZero("solve_r: kernel is singular at t=0; r(0)=a(0) undefined on a nodal grid");
    if (kern.kind() == KernelKind::Tabulated && !kern.finite_at_zero())
        throw SingularKernelOnTabulated("Tabulated kernel unbounded near 0");

    ResolventGrid out;
    out.kernel_name = kern.name();
    out.quantity = want_s ? "s" : "r";
    out.convention = conv;
    out.mu_list = std::move(mu_list);
    out.grid = grid;
    out.tol = tol;
    out.values.assign(out.mu_list.size(), {});
    std::vector<double> residuals(out.mu_list.size(), 0.0);

    const double weight_exp =
        (kern.kind() == KernelKind::Power && kern.alpha() < 1.0) ? 1.0 - kern.alpha() : 0.0;

    // weights are shared across mu for a fixed step
    auto solve_one = [&](double mu, const TimeGrid& g, const ConvWeights& w,
                         const ConvWeights& w2, std::vector<double>& vals, double& res) {
        const std::size_t n = g.count();
        if (mu == 0.0) {
            // s == 1, r == a exactly
            vals.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                vals[i] = want_s ? 1.0 : kern.eval(g.node(i));
            res = 0.0;
            return;
        }
        const EquationSpec eq = make_equation(kern, mu, want_s, conv);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = eq.f(g.node(i));
        vals = solve_linear_volterra(w, eq.c, f);
        res = equation_residual(w2, eq.c, vals, g.refined(), eq.f, weight_exp);
    };

    TimeGrid g = grid;
    for (int attempt = 0;; ++attempt) {
        const ConvWeights w = conv_weights(kern, g.h, g.count() - 1);
        const ConvWeights w2 = conv_weights(kern, g.h / 2.0, 2 * (g.count() - 1));
        parallel_for(out.mu_list.size(), threads, [&](std::size_t i) {
            solve_one(out.mu_list[i], g, w, w2, out.values[i], residuals[i]);
        });
        out.residual_max = residuals.empty() ? 0.0
                                             : *std::max_element(residuals.begin(), residuals.end());
        if (out.residual_max <= tol) break;
        if (attempt >= 1)
            throw ToleranceNotMet("resolvent solve residual " + std::to_string(out.residual_max) +
                                  " > tol " + std::to_string(tol) + " after step halving");
        g = g.refined();  // one automatic retry
    }

    if (g.h != grid.h) {
        // restrict the refined solution back to the requested nodes
        const std::size_t n = grid.count();
        for (auto& vals : out.values) {
            std::vector<double> coarse(n);
            for (std::size_t i = 0; i < n; ++i) coarse[i] = vals[2 * i];
            vals = std::move(coarse);
        }
    }
    return out;
}

}  // namespace

ResolventGrid solve_s(const Kernel& k, std::vector<double> mu_list, const TimeGrid& grid,
                      double tol, unsigned threads) {
    return solve_impl(k, std::move(mu_list), grid, tol, true, RConvention::ch1_minus, threads);
}

ResolventGrid solve_r(const Kernel& k, std::vector<double> mu_list, const TimeGrid& grid,
                      double tol, RConvention conv, unsigned threads) {
    return solve_impl(k, std::move(mu_list), grid, tol, false, conv, threads);
}

std::optional<double> closed_form_s(const Kernel& k, double mu, double t) {
    const bool limit = std::isinf(t);
    if (mu == 0.0) return 1.0;
    switch (k.kind()) {
        case KernelKind::Constant:
            if (limit) return mu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            return std::exp(-mu * t);
        case KernelKind::Linear: {
            if (limit) return std::nullopt;  // no limit (oscillatory)
            if (mu >= 0.0) return std::cos(std::sqrt(mu) * t);
            return std::cosh(std::sqrt(-mu) * t);
        }
        case KernelKind::Exponential: {
            if (limit) return mu > -1.0 ? 1.0 / (1.0 + mu) : std::numeric_limits<double>::infinity();
            return (1.0 + mu * std::exp(-(1.0 + mu) * t)) / (1.0 + mu);
        }
        case KernelKind::Power: {
            if (mu < 0.0) return std::nullopt;  // growing branch not housed here
            if (limit) return 0.0;
            return mittag_leffler(k.alpha(), -mu * std::pow(t, k.alpha()));
        }
        default:
            return std::nullopt;  // LinExp / Tabulated
    }
}

std::optional<double> closed_form_r(const Kernel& k, double mu, double t, RConvention conv) {
    // internally use the ch4 sign: r = a + mu (a*r)
    const double m = (conv == RConvention::ch4_plus) ? mu : -mu;
    switch (k.kind()) {
        case KernelKind::Constant:
            return std::exp(m * t);
        case KernelKind::Linear: {
            if (m == 0.0) return t;
            if (m > 0.0) return std::sinh(std::sqrt(m) * t) / std::sqrt(m);
            const double w = std::sqrt(-m);
            return std::sin(w * t) / w;
        }
        case KernelKind::Exponential:
            return std::exp((1.0 + m) * t);
        case KernelKind::LinExp: {
            if (m == 0.0) return t * std::exp(-t);
            if (m > 0.0) return std::exp(-t) * std::sinh(std::sqrt(m) * t) / std::sqrt(m);
            const double w = std::sqrt(-m);
            return std::exp(-t) * std::sin(w * t) / w;
        }
        default:
            return std::nullopt;
    }
}

namespace {

// Shared machinery: integral_0^inf phi(t)^2 dt by horizon doubling with a
// fitted exponential tail bound on windowed maxima of phi^2.
double squared_integral_to_infinity(const std::function<double(double)>& phi,
                                    double freq_scale, double tol,
                                    const char* who) {
    const double density = std::max(64.0, 24.0 * freq_scale);
    double T = 2.0;
    int non_decaying = 0;
    double prev_slope = 1.0;
    for (int pass = 0; pass < 24; ++pass) {
        const auto f2 = [&](double t) {
            const double v = phi(t);
            return v * v;
        };
        const std::size_t n = static_cast<std::size_t>(std::max(256.0, density * T));
        const double integral = simpson(f2, 0.0, T, n);

        // envelope fit on windowed maxima over the last half of the horizon
        constexpr int windows = 16;
        std::vector<double> xs, ys;
        const double lo = T / 2.0;
        for (int wdx = 0; wdx < windows; ++wdx) {
            const double a = lo + (T - lo) * wdx / windows;
            const double b = lo + (T - lo) * (wdx + 1) / windows;
            double peak = 0.0;
            const int samples = std::max(8, static_cast<int>(density * (b - a)));
            for (int s = 0; s <= samples; ++s)
                peak = std::max(peak, f2(a + (b - a) * s / samples));
            if (peak > 0.0 && std::isfinite(peak)) {
                xs.push_back(0.5 * (a + b));
                ys.push_back(std::log(peak));
            }
        }
        if (xs.size() < 4) return integral;  // identically ~0 tail
        const LinearFit fit = fit_line(xs, ys);
        if (fit.slope >= -1e-10) {
            if (++non_decaying >= 2 && prev_slope >= -1e-10)
                throw NonIntegrable(std::string(who) + ": squared tail fails to decay");
            prev_slope = fit.slope;
            T *= 2.0;
            continue;
        }
        prev_slope = fit.slope;
        const double tail = std::exp(fit.intercept + fit.slope * T) / (-fit.slope);
        if (tail <= tol * std::max(integral, 1e-300)) return integral;
        T *= 2.0;
    }
    throw QuadratureStall(std::string(who) + ": horizon doubling failed to converge");
}

std::function<double(double)> numeric_r_interpolant(const Kernel& k, double mu, double span,
                                                    double freq_scale) {
    // fallback for kernels without closed-form r (Tabulated)
    const double h = std::min(0.01, 0.05 / std::max(1.0, freq_scale));
    TimeGrid g(span, h);
    auto grid = solve_r(k, {mu}, g, 1e-5, RConvention::ch4_plus);
    auto vals = std::make_shared<std::vector<double>>(std::move(grid.values[0]));
    return [vals, h, span](double t) {
        if (t >= span) return 0.0;
        const double x = t / h;
        const std::size_t i = std::min(vals->size() - 2, static_cast<std::size_t>(x));
        const double w = x - static_cast<double>(i);
        return (*vals)[i] * (1.0 - w) + (*vals)[i + 1] * w;
    };
}

}  // namespace

double squared_tail_integral(const Kernel& k, double mu, double tol) {
    const double freq_scale = std::sqrt(std::abs(mu)) + std::abs(1.0 + mu) *
        ((k.kind() == KernelKind::Exponential || k.kind() == KernelKind::Constant) ? 1.0 : 0.0);
    std::function<double(double)> r;
    if (closed_form_r(k, mu, 0.0, RConvention::ch4_plus)) {
        r = [k, mu](double t) { return *closed_form_r(k, mu, t, RConvention::ch4_plus); };
    } else {
        r = numeric_r_interpolant(k, mu, 64.0, freq_scale);
    }
    return squared_integral_to_infinity(r, freq_scale, tol, "squared_tail_integral");
}

double s_squared_integral(const Kernel& k, double mu, double t, double tol) {
    if (t <= 0.0) return 0.0;
    if (mu == 0.0) return t;
    // analytic antiderivatives where the catalog's s makes them elementary
    switch (k.kind()) {
        case KernelKind::Constant:
            return (1.0 - std::exp(-2.0 * mu * t)) / (2.0 * mu);
        case KernelKind::Linear:
            if (mu > 0.0) {
                const double w = std::sqrt(mu);
                return 0.5 * t + std::sin(2.0 * w * t) / (4.0 * w);
            }
            break;
        case KernelKind::Exponential:
            if (mu > -1.0) {
                const double c = 1.0 + mu;
                return (t + 2.0 * mu * (1.0 - std::exp(-c * t)) / c +
                        mu * mu * (1.0 - std::exp(-2.0 * c * t)) / (2.0 * c)) /
                       (c * c);
            }
            break;
        default:
            break;
    }
    const double freq_scale = std::sqrt(std::abs(mu)) + std::abs(mu);
    if (auto probe = closed_form_s(k, mu, 0.5 * t); probe.has_value()) {
        const auto f = [&](double x) {
            const double v = *closed_form_s(k, mu, x);
            return v * v;
        };
        const std::size_t n = static_cast<std::size_t>(std::max(512.0, 24.0 * freq_scale * t));
        return simpson(f, 0.0, t, n);
    }
    // numeric path: product-integration solve then Simpson on the nodes
    const double h = std::min(t / 512.0, 0.05 / std::max(1.0, freq_scale));
    TimeGrid g(t, h);
    auto grid = solve_s(k, {mu}, g, std::max(tol, 1e-6));
    const auto& v = grid.values[0];
    const auto f = [&](double x) {
        const double xx = x / g.h;
        const std::size_t i = std::min(v.size() - 2, static_cast<std::size_t>(xx));
        const double w = xx - static_cast<double>(i);
        const double sv = v[i] * (1.0 - w) + v[i + 1] * w;
        return sv * sv;
    };
    return simpson(f, 0.0, t, 2 * (v.size() - 1));
}

double s_squared_tail_integral(const Kernel& k, double mu, double tol) {
    if (mu == 0.0) throw NonIntegrable("s_squared_tail_integral: s == 1 at mu = 0");
    if (k.kind() == KernelKind::Constant) {
        if (mu < 0.0) throw NonIntegrable("s_squared_tail_integral: s grows for mu < 0");
        return 1.0 / (2.0 * mu);
    }
    if (k.kind() == KernelKind::Exponential && mu > 0.0)
        throw NonIntegrable("s_squared_tail_integral: s has the nonzero limit 1/(1+mu)");
    const double freq_scale = std::sqrt(std::abs(mu)) + std::abs(mu);
    std::function<double(double)> s;
    if (closed_form_s(k, mu, 1.0).has_value()) {
        s = [k, mu](double t) { return *closed_form_s(k, mu, t); };
    } else {
        // numeric fallback over a long horizon
        const double span = 64.0;
        const double h = std::min(0.01, 0.05 / std::max(1.0, freq_scale));
        TimeGrid g(span, h);
        auto grid = solve_s(k, {mu}, g, 1e-5);
        auto vals = std::make_shared<std::vector<double>>(std::move(grid.values[0]));
        s = [vals, h, span](double t) {
            if (t >= span) return 0.0;
            const double x = t / h;
            const std::size_t i = std::min(vals->size() - 2, static_cast<std::size_t>(x));
            const double w = x - static_cast<double>(i);
            return (*vals)[i] * (1.0 - w) + (*vals)[i + 1] * w;
        };
    }
    return squared_integral_to_infinity(s, freq_scale, tol, "s_squared_tail_integral");
}

}  // namespace vfl
