#include "vfl/spectral.hpp"

#include <cmath>

namespace vfl {

Symbol Symbol::fractional_power(std::size_t dim, double alpha_s) {
    if (dim < 1) throw OutOfRange("Symbol: dimension must be >= 1");
    if (!(alpha_s > 0.0 && alpha_s <= 2.0))
        throw OutOfRange("FractionalPower symbol requires alpha_s in (0,2]");
    Symbol s(SymbolKind::FractionalPower, dim);
    s.alpha_s_ = alpha_s;
    return s;
}

Symbol Symbol::quadratic(std::size_t dim, std::vector<double> q) {
    if (dim < 1) throw OutOfRange("Symbol: dimension must be >= 1");
    if (q.size() != dim * dim) throw DimensionMismatch("Quadratic symbol: Q must be d*d");
    Symbol s(SymbolKind::Quadratic, dim);
    s.q_ = std::move(q);
    return s;
}

Symbol Symbol::levy_khinchin(std::size_t dim, std::vector<double> q,
                             std::vector<std::pair<std::vector<double>, double>> atoms) {
    if (dim < 1) throw OutOfRange("Symbol: dimension must be >= 1");
    if (!q.empty() && q.size() != dim * dim)
        throw DimensionMismatch("LevyKhinchin symbol: Q must be d*d or empty");
    for (const auto& [x, w] : atoms) {
        if (x.size() != dim) throw DimensionMismatch("LevyKhinchin atom of wrong dimension");
        if (w < 0.0) throw OutOfRange("LevyKhinchin atom weights must be >= 0");
    }
    Symbol s(SymbolKind::LevyKhinchin, dim);
    s.q_ = std::move(q);
    s.atoms_ = std::move(atoms);
    return s;
}

std::string Symbol::name() const {
    switch (kind_) {
        case SymbolKind::FractionalPower:
            return "FractionalPower(" + std::to_string(alpha_s_) + ")";
        case SymbolKind::Quadratic: return "Quadratic";
        case SymbolKind::LevyKhinchin: return "LevyKhinchin";
    }
    return "?";
}

double Symbol::eval(const std::vector<double>& lambda) const {
    if (lambda.size() != dim_) throw DimensionMismatch("symbol_eval: dim(lambda) != d");
    switch (kind_) {
        case SymbolKind::FractionalPower: {
            double n2 = 0.0;
            for (double x : lambda) n2 += x * x;
            if (n2 == 0.0) return 0.0;
            return std::pow(n2, alpha_s_ / 2.0);
        }
        case SymbolKind::Quadratic:
        case SymbolKind::LevyKhinchin: {
            double quad = 0.0;
            if (!q_.empty())
                for (std::size_t i = 0; i < dim_; ++i)
                    for (std::size_t j = 0; j < dim_; ++j)
                        quad += q_[i * dim_ + j] * lambda[i] * lambda[j];
            double jumps = 0.0;
            for (const auto& [x, w] : atoms_) {
                double dot = 0.0;
                for (std::size_t i = 0; i < dim_; ++i) dot += lambda[i] * x[i];
                jumps += w * (1.0 - std::cos(dot));
            }
            return quad + jumps;
        }
    }
    return 0.0;
}

double Symbol::eval_radial(double r) const {
    if (kind_ == SymbolKind::FractionalPower) return std::pow(std::abs(r), alpha_s_);
    std::vector<double> lambda(dim_, 0.0);
    lambda[0] = r;
    return eval(lambda);
}

SpectralSpec SpectralSpec::torus_decay(std::size_t dim, double q) {
    if (dim < 1) throw OutOfRange("SpectralSpec: dimension must be >= 1");
    SpectralSpec s(SpectralKind::TorusDecay, dim);
    s.q_ = q;
    return s;
}

SpectralSpec SpectralSpec::torus_explicit(std::size_t dim,
                                          std::map<std::vector<int>, double> coeffs) {
    if (dim < 1) throw OutOfRange("SpectralSpec: dimension must be >= 1");
    for (const auto& [n, g] : coeffs) {
        if (n.size() != dim) throw DimensionMismatch("TorusExplicit coefficient of wrong dimension");
        if (g < 0.0) throw NegativeCoefficient("TorusExplicit: gamma_n must be >= 0");
    }
    SpectralSpec s(SpectralKind::TorusExplicit, dim);
    s.coeffs_ = std::move(coeffs);
    return s;
}

SpectralSpec SpectralSpec::radial_power(std::size_t dim, double beta) {
    if (dim < 1) throw OutOfRange("SpectralSpec: dimension must be >= 1");
    if (!(beta > 0.0)) throw OutOfRange("RadialPower requires beta > 0");
    SpectralSpec s(SpectralKind::RadialPower, dim);
    s.beta_ = beta;
    return s;
}

SpectralSpec SpectralSpec::finite_mass(std::size_t dim, double mass) {
    if (dim < 1) throw OutOfRange("SpectralSpec: dimension must be >= 1");
    if (!(mass >= 0.0)) throw OutOfRange("FiniteMass requires mass >= 0");
    SpectralSpec s(SpectralKind::FiniteMass, dim);
    s.mass_ = mass;
    return s;
}

std::string SpectralSpec::name() const {
    switch (kind_) {
        case SpectralKind::TorusDecay: return "TorusDecay(q=" + std::to_string(q_) + ")";
        case SpectralKind::TorusExplicit: return "TorusExplicit";
        case SpectralKind::RadialPower: return "RadialPower(beta=" + std::to_string(beta_) + ")";
        case SpectralKind::FiniteMass: return "FiniteMass(m=" + std::to_string(mass_) + ")";
    }
    return "?";
}

double SpectralSpec::coefficient(const std::vector<int>& n) const {
    if (n.size() != dim_) throw DimensionMismatch("coefficient: dim(n) != d");
    switch (kind_) {
        case SpectralKind::TorusDecay: {
            double n2 = 0.0;
            for (int c : n) n2 += static_cast<double>(c) * c;
            return std::pow(1.0 + n2, -q_);
        }
        case SpectralKind::TorusExplicit: {
            auto it = coeffs_.find(n);
            return it == coeffs_.end() ? 0.0 : it->second;
        }
        default:
            throw Unsupported("coefficient: not a torus spectral spec");
    }
}

double SpectralSpec::radial_density(double r) const {
    switch (kind_) {
        case SpectralKind::RadialPower:
            return std::pow(r, -(static_cast<double>(dim_) - beta_));
        case SpectralKind::FiniteMass:
            return mass_ * std::pow(2.0 * M_PI, -0.5 * static_cast<double>(dim_)) *
                   std::exp(-0.5 * r * r);
        default:
            throw Unsupported("radial_density: not a radial spectral spec");
    }
}

bool SpectralSpec::slowly_increasing(int n_cap) const {
    if (!is_torus()) throw Unsupported("slowly_increasing: torus specs only");
    if (kind_ == SpectralKind::TorusDecay) return true;  // polynomial decay/growth
    // finite explicit set: test with r = 2d + 2 and require the partial sums bounded
    const double r = 2.0 * static_cast<double>(dim_) + 2.0;
    double sum = 0.0;
    for (const auto& [n, g] : coeffs_) {
        double n2 = 0.0;
        for (int c : n) n2 += static_cast<double>(c) * c;
        sum += g / std::pow(1.0 + std::sqrt(n2), r);
    }
    (void)n_cap;
    return std::isfinite(sum);
}

static void rep_modes_rec(std::size_t dim, int N, std::vector<std::vector<int>>& out) {
    if (dim == 1) {
        for (int n = 1; n <= N; ++n) out.push_back({n});
        return;
    }
    // Z_s^{d} = (N x Z^{d-1}) union ({0} x Z_s^{d-1})
    std::vector<std::vector<int>> tails;
    tails.push_back({});
    for (std::size_t i = 1; i < dim; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& t : tails)
            for (int c = -N; c <= N; ++c) {
                auto u = t;
                u.push_back(c);
                next.push_back(std::move(u));
            }
        tails = std::move(next);
    }
    for (int head = 1; head <= N; ++head)
        for (const auto& t : tails) {
            std::vector<int> m{head};
            m.insert(m.end(), t.begin(), t.end());
            out.push_back(std::move(m));
        }
    std::vector<std::vector<int>> lower;
    rep_modes_rec(dim - 1, N, lower);
    for (const auto& t : lower) {
        std::vector<int> m{0};
        m.insert(m.end(), t.begin(), t.end());
        out.push_back(std::move(m));
    }
}

std::vector<std::vector<int>> representative_modes(std::size_t dim, int N) {
    if (N < 1) throw OutOfRange("representative_modes: N >= 1 required");
    std::vector<std::vector<int>> out;
    rep_modes_rec(dim, N, out);
    return out;
}

}  // namespace vfl
