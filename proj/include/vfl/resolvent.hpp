#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vfl/grid.hpp"
#include "vfl/kernel.hpp"

namespace vfl {

/// Sign convention of the r-equation:
///   ch1_minus:  r + mu (a*r) = a
///   ch4_plus :  r = a + mu (a*r)
/// The two are related by mu <-> -mu.
enum class RConvention { ch1_minus, ch4_plus };

/// Time-grid samples of s(t;mu) or r(t;mu) for a batch of mu values.
struct ResolventGrid {
    std::string kernel_name;
    std::string quantity;  // "s" or "r"
    RConvention convention = RConvention::ch1_minus;
    std::vector<double> mu_list;
    TimeGrid grid;
    std::vector<std::vector<double>> values;  // [mu index][node]
    double residual_max = 0.0;
    double tol = 0.0;
};

/// Solves s + mu (a*s) = 1 for every mu by product (Volterra) trapezoidal
/// integration with exact per-subinterval kernel moments. The reported
/// residual is the functional-equation defect of the piecewise-linear
/// solution evaluated on a 2x refined grid. One automatic step-halving
/// retry before ToleranceNotMet.
ResolventGrid solve_s(const Kernel& k, std::vector<double> mu_list, const TimeGrid& grid,
                      double tol = 1e-8, unsigned threads = 1);

ResolventGrid solve_r(const Kernel& k, std::vector<double> mu_list, const TimeGrid& grid,
                      double tol = 1e-8, RConvention conv = RConvention::ch4_plus,
                      unsigned threads = 1);

/// Closed-form s(t;mu) where the catalog has one (Constant, Linear,
/// Exponential, Power). t may be +infinity for limit queries.
std::optional<double> closed_form_s(const Kernel& k, double mu, double t);

/// Closed-form r(t;mu) in the chosen convention (Constant, Linear,
/// Exponential, LinExp). For negative spectral parameter the oscillatory
/// analytic continuation sin/|.| of the sinh branch is used.
std::optional<double> closed_form_r(const Kernel& k, double mu, double t,
                                    RConvention conv = RConvention::ch4_plus);

/// integral_0^inf r(s,mu)^2 ds in the ch4_plus convention, mu < 0 expected.
/// Adaptive horizon doubling with a fitted exponential tail bound; throws
/// NonIntegrable when the fitted decay rate stays >= 0 over two doublings.
double squared_tail_integral(const Kernel& k, double mu, double tol = 1e-9);

/// integral_0^t s(sigma;mu)^2 dsigma (quadrature on closed form or solver grid).
double s_squared_integral(const Kernel& k, double mu, double t, double tol = 1e-9);

/// integral_0^inf s(sigma;mu)^2 dsigma with tail control; throws NonIntegrable
/// when s^2 fails to decay (e.g. Linear kernel).
double s_squared_tail_integral(const Kernel& k, double mu, double tol = 1e-9);

}  // namespace vfl
