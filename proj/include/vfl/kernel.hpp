#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "vfl/errors.hpp"

namespace vfl {

enum class KernelKind {
    Constant,     // a(t) = 1
    Linear,       // a(t) = t
    Exponential,  // a(t) = e^{-t}
    LinExp,       // a(t) = t e^{-t}
    Power,        // a(t) = t^{alpha-1} / Gamma(alpha), alpha in (0,2)
    Tabulated,    // piecewise-linear samples on a grid
};

/// Memory kernel a(t) of the convolution equation. Immutable.
class Kernel {
public:
    static Kernel constant() { return Kernel(KernelKind::Constant); }
    static Kernel linear() { return Kernel(KernelKind::Linear); }
    static Kernel exponential() { return Kernel(KernelKind::Exponential); }
    static Kernel lin_exp() { return Kernel(KernelKind::LinExp); }
    static Kernel power(double alpha);
    static Kernel tabulated(std::vector<double> times, std::vector<double> values);

    KernelKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    std::string name() const;

    /// a(t). Throws SingularAtZero for Power with alpha<1 at t=0,
    /// OutOfRange for Tabulated beyond its grid.
    double eval(double t) const;

    /// Laplace transform of a at lambda, Re lambda > 0. Closed form only.
    std::complex<double> laplace(std::complex<double> lambda) const;

    /// true when a(0+) is finite (needed by the r-equation at the first node).
    bool finite_at_zero() const;

    /// Exact subinterval moments of the kernel on [(k-1)h, kh], k >= 1:
    ///   moment0 = integral of a(u) du,  moment1 = integral of u a(u) du.
    void moments(double h, std::size_t k, double& moment0, double& moment1) const;

    struct Flags {
        std::optional<bool> completely_monotonic;
        std::optional<bool> completely_positive;
        std::optional<bool> k_regular_all_k;
    };
    /// Catalog classification; Tabulated is all-unknown.
    Flags classify() const;

private:
    explicit Kernel(KernelKind k) : kind_(k) {}

    KernelKind kind_;
    double alpha_ = 0.0;
    std::vector<double> tab_t_, tab_v_;
};

/// Numeric Laplace quadrature of a tabulated kernel is deliberately absent;
/// the Tabulated variant only supports eval() and moments().

}  // namespace vfl
