#include "vfl/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace vfl {

Kernel Kernel::power(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw OutOfRange("Power kernel requires alpha in (0,2), got " + std::to_string(alpha));
    Kernel k(KernelKind::Power);
    k.alpha_ = alpha;
    return k;
}

Kernel Kernel::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.size() < 2 || times.size() != values.size())
        throw OutOfRange("Tabulated kernel needs >= 2 samples with matching sizes");
    if (!(times.front() >= 0.0))
        throw OutOfRange("Tabulated kernel grid must start at t >= 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw OutOfRange("Tabulated kernel grid must be strictly increasing");
    Kernel k(KernelKind::Tabulated);
    k.tab_t_ = std::move(times);
    k.tab_v_ = std::move(values);
    return k;
}

std::string Kernel::name() const {
    switch (kind_) {
        case KernelKind::Constant: return "Constant";
        case KernelKind::Linear: return "Linear";
        case KernelKind::Exponential: return "Exponential";
        case KernelKind::LinExp: return "LinExp";
        case KernelKind::Power: return "Power(" + std::to_string(alpha_) + ")";
        case KernelKind::Tabulated: return "Tabulated";
    }
    return "?";
}

double Kernel::eval(double t) const {
    if (t < 0.0) throw OutOfRange("kernel_eval: t must be >= 0");
    switch (kind_) {
        case KernelKind::Constant: return 1.0;
        case KernelKind::Linear: return t;
        case KernelKind::Exponential: return std::exp(-t);
        case KernelKind::LinExp: return t * std::exp(-t);
        case KernelKind::Power:
            if (t == 0.0) {
                if (alpha_ < 1.0) throw SingularAtZero("Power kernel with alpha<1 is singular at t=0");
                if (alpha_ == 1.0) return 1.0;
                return 0.0;
            }
            return std::pow(t, alpha_ - 1.0) / std::tgamma(alpha_);
        case KernelKind::Tabulated: {
            if (t < tab_t_.front() || t > tab_t_.back()) {
                // extend flat to 0 on the left only if the first sample is close to 0
                if (t < tab_t_.front() && t >= 0.0) {
                    // linear continuation from the first two samples down to t
                    const double t0 = tab_t_[0], t1 = tab_t_[1];
                    const double v0 = tab_v_[0], v1 = tab_v_[1];
                    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
                }
                throw OutOfRange("Tabulated kernel queried beyond its grid");
            }
            auto it = std::upper_bound(tab_t_.begin(), tab_t_.end(), t);
            std::size_t j = (it == tab_t_.begin()) ? 1 : static_cast<std::size_t>(it - tab_t_.begin());
            if (j >= tab_t_.size()) j = tab_t_.size() - 1;
            const double t0 = tab_t_[j - 1], t1 = tab_t_[j];
            const double w = (t - t0) / (t1 - t0);
            return tab_v_[j - 1] * (1.0 - w) + tab_v_[j] * w;
        }
    }
    return 0.0;
}

std::complex<double> Kernel::laplace(std::complex<double> lambda) const {
    if (!(lambda.real() > 0.0)) throw OutOfRange("kernel_laplace: Re lambda > 0 required");
    using C = std::complex<double>;
    switch (kind_) {
        case KernelKind::Constant: return 1.0 / lambda;
        case KernelKind::Linear: return 1.0 / (lambda * lambda);
        case KernelKind::Exponential: return 1.0 / (lambda + 1.0);
        case KernelKind::LinExp: {
            C lp = lambda + 1.0;
            return 1.0 / (lp * lp);
        }
        case KernelKind::Power: return std::pow(lambda, C(-alpha_));
        case KernelKind::Tabulated:
            throw Unsupported("kernel_laplace: no closed form for Tabulated kernels");
    }
    return {};
}

bool Kernel::finite_at_zero() const {
    switch (kind_) {
        case KernelKind::Power: return alpha_ >= 1.0;
        case KernelKind::Tabulated: return true;  // linear continuation to t=0
        default: return true;
    }
}

void Kernel::moments(double h, std::size_t k, double& m0, double& m1) const {
    const double lo = (static_cast<double>(k) - 1.0) * h;
    const double hi = static_cast<double>(k) * h;
    switch (kind_) {
        case KernelKind::Constant:
            m0 = h;
            m1 = 0.5 * (hi * hi - lo * lo);
            return;
        case KernelKind::Linear:
            m0 = 0.5 * (hi * hi - lo * lo);
            m1 = (hi * hi * hi - lo * lo * lo) / 3.0;
            return;
        case KernelKind::Exponential: {
            const double el = std::exp(-lo), eh = std::exp(-hi);
            m0 = el - eh;
            m1 = (lo + 1.0) * el - (hi + 1.0) * eh;
            return;
        }
        case KernelKind::LinExp: {
            const double el = std::exp(-lo), eh = std::exp(-hi);
            m0 = (lo + 1.0) * el - (hi + 1.0) * eh;
            m1 = (lo * lo + 2.0 * lo + 2.0) * el - (hi * hi + 2.0 * hi + 2.0) * eh;
            return;
        }
        case KernelKind::Power: {
            const double ga1 = std::tgamma(alpha_ + 1.0);
            m0 = (std::pow(hi, alpha_) - std::pow(lo, alpha_)) / ga1;
            m1 = (std::pow(hi, alpha_ + 1.0) - std::pow(lo, alpha_ + 1.0)) /
                 (std::tgamma(alpha_) * (alpha_ + 1.0));
            return;
        }
        case KernelKind::Tabulated: {
            // exact integration of the piecewise-linear interpolant:
            // split [lo,hi] at the tabulated breakpoints.
            if (hi > tab_t_.back())
                throw OutOfRange("Tabulated kernel moments beyond its grid");
            std::vector<double> cuts{lo};
            for (double tc : tab_t_)
                if (tc > lo && tc < hi) cuts.push_back(tc);
            cuts.push_back(hi);
            m0 = 0.0;
            m1 = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double x0 = cuts[i], x1 = cuts[i + 1];
                const double v0 = eval(x0), v1 = eval(x1);
                const double dx = x1 - x0;
                m0 += 0.5 * (v0 + v1) * dx;
                // integral of u * linear(u): exact via endpoint values
                m1 += dx * (x0 * (2.0 * v0 + v1) + x1 * (v0 + 2.0 * v1)) / 6.0;
            }
            return;
        }
    }
}

Kernel::Flags Kernel::classify() const {
    Flags f;
    switch (kind_) {
        case KernelKind::Constant:
            f.completely_monotonic = true;
            f.completely_positive = true;
            f.k_regular_all_k = true;
            break;
        case KernelKind::Linear:
            f.completely_monotonic = false;  // a'(t) = 1 > 0
            f.completely_positive = true;    // catalog flag: s(t;mu)=cos(sqrt(mu) t) is explicit and uniformly bounded
            f.k_regular_all_k = true;
            break;
        case KernelKind::Exponential:
            f.completely_monotonic = true;
            f.completely_positive = true;
            f.k_regular_all_k = true;
            break;
        case KernelKind::LinExp:
            f.completely_monotonic = false;
            f.completely_positive = false;  // r oscillates for mu > 0
            f.k_regular_all_k = true;
            break;
        case KernelKind::Power:
            if (alpha_ <= 1.0) {
                f.completely_monotonic = true;
                f.completely_positive = true;
            } else {
                f.completely_monotonic = false;
                f.completely_positive = false;
            }
            f.k_regular_all_k = true;
            break;
        case KernelKind::Tabulated:
            break;  // all-unknown
    }
    return f;
}

}  // namespace vfl
