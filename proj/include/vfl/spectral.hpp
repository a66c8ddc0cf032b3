#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "vfl/errors.hpp"

namespace vfl {

enum class SymbolKind { FractionalPower, Quadratic, LevyKhinchin };

/// Fourier multiplier v(lambda) of the spatial operator: F(A xi) = -v(lambda) F(xi).
class Symbol {
public:
    /// v(lambda) = |lambda|^alpha_s, alpha_s in (0,2].
    static Symbol fractional_power(std::size_t dim, double alpha_s);
    /// v(lambda) = <Q lambda, lambda>, Q symmetric nonnegative (row-major d*d).
    static Symbol quadratic(std::size_t dim, std::vector<double> q);
    /// v(lambda) = <Q lambda, lambda> + sum_j w_j (1 - cos<lambda, x_j>).
    static Symbol levy_khinchin(std::size_t dim, std::vector<double> q,
                                std::vector<std::pair<std::vector<double>, double>> atoms);

    SymbolKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    double exponent() const { return alpha_s_; }
    std::string name() const;

    double eval(const std::vector<double>& lambda) const;
    /// Radial evaluation v(r e_1); exact for FractionalPower, otherwise along the first axis.
    double eval_radial(double r) const;

private:
    Symbol(SymbolKind k, std::size_t d) : kind_(k), dim_(d) {}

    SymbolKind kind_;
    std::size_t dim_;
    double alpha_s_ = 0.0;
    std::vector<double> q_;  // row-major d*d, may be empty (zero matrix)
    std::vector<std::pair<std::vector<double>, double>> atoms_;
};

enum class SpectralKind { TorusDecay, TorusExplicit, RadialPower, FiniteMass };

/// Covariance specification: torus Fourier coefficients or a radial density on R^d.
class SpectralSpec {
public:
    /// gamma_n = (1+|n|^2)^{-q} on the torus.
    static SpectralSpec torus_decay(std::size_t dim, double q);
    /// explicit coefficients on representatives of Z_s^d plus n=0 (key = lattice point).
    static SpectralSpec torus_explicit(std::size_t dim, std::map<std::vector<int>, double> coeffs);
    /// density c_beta/|lambda|^{d-beta} on R^d, c_beta = 1, beta in (0,d).
    static SpectralSpec radial_power(std::size_t dim, double beta);
    /// Gaussian-shape density with total mass m.
    static SpectralSpec finite_mass(std::size_t dim, double mass);

    SpectralKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    double decay_q() const { return q_; }
    double beta() const { return beta_; }
    double mass() const { return mass_; }
    std::string name() const;

    bool is_torus() const {
        return kind_ == SpectralKind::TorusDecay || kind_ == SpectralKind::TorusExplicit;
    }

    /// Torus coefficient gamma_n (representative n).
    double coefficient(const std::vector<int>& n) const;
    const std::map<std::vector<int>, double>& explicit_coefficients() const { return coeffs_; }

    /// Radial spectral density mu(d lambda)/d lambda evaluated at radius r > 0.
    double radial_density(double r) const;

    /// Numerical slowly-increasing check for torus specs:
    /// exists r > 0 with sum gamma_n/(1+|n|^r) < infinity (finite truncation).
    bool slowly_increasing(int n_cap = 64) const;

private:
    explicit SpectralSpec(SpectralKind k, std::size_t d) : kind_(k), dim_(d) {}

    SpectralKind kind_;
    std::size_t dim_;
    double q_ = 0.0;
    double beta_ = 0.0;
    double mass_ = 0.0;
    std::map<std::vector<int>, double> coeffs_;
};

/// Representative index set Z_s^d (paper's inductive half-lattice), capped at max|n_i| <= N.
std::vector<std::vector<int>> representative_modes(std::size_t dim, int N);

}  // namespace vfl
