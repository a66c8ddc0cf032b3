#pragma once

#include <vector>

#include "vfl/errors.hpp"

namespace vfl {

/// Parameters for the alpha-times resolvent / subordination machinery.
struct FracParams {
    double alpha = 0.5;   // fractional order, in (0,2)
    double gamma = 0.5;   // subordination ratio alpha/beta, in (0,1)
    int cutoff = 64;      // series cutoff K
    double radius = 5.0;  // strategy switch radius R for Mittag-Leffler

    void validate() const {
        if (!(alpha > 0.0 && alpha < 2.0)) throw OutOfRange("FracParams: alpha must lie in (0,2)");
        if (!(gamma > 0.0 && gamma < 1.0)) throw OutOfRange("FracParams: gamma must lie in (0,1)");
        if (cutoff < 20) throw OutOfRange("FracParams: series cutoff K must be >= 20");
    }
};

/// E_alpha(z) on the decaying branch z <= 0, alpha in (0,2]. Power series for
/// |z| <= 5, asymptotic expansion (with the oscillatory exponential pair for
/// alpha > 1) beyond; both are computed in the overlap band and AccuracyLoss
/// is raised when they disagree by more than 1e-8 while both error estimates
/// say they should agree.
double mittag_leffler(double alpha, double z);

/// Wright probability density Phi_gamma(z), gamma in (0,1), z >= 0, by its
/// power series with a truncated-tail bound below 1e-10; tiny negative values
/// from roundoff are clamped to 0. SeriesDivergence when the terms fail to
/// turn decreasing before the cutoff.
double wright_density(double gamma, double z);

/// Scalar alpha-times resolvent: E_alpha(-mu t^alpha), alpha in (0,2), mu >= 0.
double alpha_resolvent_s(double alpha, double mu, double t);

/// Residual |E_alpha(-mu t^alpha) - integral_0^inf Phi_gamma(u) s_beta(u t^gamma; mu) du|
/// of the subordination identity, gamma = alpha/beta, with s_beta = exp(-mu s)
/// for beta=1 and cos(sqrt(mu) s) for beta=2. The quadrature horizon doubles
/// until the integral stabilizes; QuadratureStall if it never does.
double subordination_check(double alpha, double beta, double mu, double t,
                           std::size_t quad_nodes = 2048);

/// Fits the constant C in E_alpha(omega t^alpha) <= C exp(omega^{1/alpha} t)
/// over the given positive omega and t grids: returns the maximal ratio
/// (always >= 1, attained at t=0).
double exponential_bound_constant(double alpha, const std::vector<double>& omegas,
                                  const std::vector<double>& ts);

}  // namespace vfl
