#pragma once

#include <vector>

#include "vfl/grid.hpp"
#include "vfl/kernel.hpp"

namespace vfl {

/// One Yosida convergence sweep: sup_t |s(t; gamma_n) - s(t; gamma)| per
/// approximation index n, measured on the grid.
struct YosidaSweep {
    Kernel kernel;
    double gamma = 0.0;
    std::vector<long long> n_list;        // strictly increasing, > 0
    TimeGrid grid;
    std::vector<double> gamma_n;          // Yosida-mapped eigenvalues
    std::vector<double> sup_distances;    // per n
    double fitted_slope = 0.0;            // log-log slope of sup_distance vs n
    bool hypothesis_ok = true;            // kernel flags assert complete positivity
};

/// Diagonal Yosida approximation of the eigenvalue: gamma_n = n*gamma/(n+gamma).
double yosida_parameter(double gamma, double n);

/// Computes the sweep with closed-form s where the catalog has one and the
/// product-integration solver otherwise. A kernel whose flags do not assert
/// complete positivity is recorded (hypothesis_ok=false), not rejected.
YosidaSweep yosida_convergence_table(const Kernel& k, double gamma,
                                     std::vector<long long> n_list, const TimeGrid& grid,
                                     double tol = 1e-6, unsigned threads = 1);

}  // namespace vfl
