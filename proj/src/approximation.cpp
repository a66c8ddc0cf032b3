#include "vfl/approximation.hpp"

#include <algorithm>
#include <cmath>

#include "vfl/errors.hpp"
#include "vfl/numeric.hpp"
#include "vfl/resolvent.hpp"

namespace vfl {

double yosida_parameter(double gamma, double n) {
    if (!(n > 0.0)) throw OutOfRange("yosida_parameter: n must be > 0");
    if (gamma < 0.0) throw OutOfRange("yosida_parameter: gamma must be >= 0");
    if (gamma == 0.0) return 0.0;
    return n * gamma / (n + gamma);
}

namespace {

// s(.;mu) on the grid: closed form when the catalog has one, solver otherwise.
std::vector<double> s_curve(const Kernel& k, double mu, const TimeGrid& grid, double tol) {
    if (closed_form_s(k, mu, grid.t_max).has_value()) {
        std::vector<double> out(grid.count());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = *closed_form_s(k, mu, grid.node(i));
        return out;
    }
    return solve_s(k, {mu}, grid, tol).values[0];
}

}  // namespace

YosidaSweep yosida_convergence_table(const Kernel& k, double gamma,
                                     std::vector<long long> n_list, const TimeGrid& grid,
                                     double tol, unsigned threads) {
    if (gamma < 0.0) throw OutOfRange("yosida_convergence_table: gamma must be >= 0");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] <= 0) throw OutOfRange("yosida_convergence_table: indices must be > 0");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw OutOfRange("yosida_convergence_table: n_list must be strictly increasing");
    }

    YosidaSweep sweep{k, gamma, std::move(n_list), grid, {}, {}, 0.0, true};
    const auto flags = k.classify();
    sweep.hypothesis_ok = flags.completely_positive.value_or(false);

    sweep.gamma_n.resize(sweep.n_list.size());
    sweep.sup_distances.resize(sweep.n_list.size());
    const std::vector<double> exact = s_curve(k, gamma, grid, tol);
    parallel_for(sweep.n_list.size(), threads, [&](std::size_t j) {
        const double gn = yosida_parameter(gamma, static_cast<double>(sweep.n_list[j]));
        sweep.gamma_n[j] = gn;
        const std::vector<double> approx = s_curve(k, gn, grid, tol);
        double sup = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i)
            sup = std::max(sup, std::abs(approx[i] - exact[i]));
        sweep.sup_distances[j] = sup;
    });

    // log-log rate fit over the entries with a nonzero distance
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < sweep.n_list.size(); ++j) {
        if (sweep.sup_distances[j] > 0.0) {
            lx.push_back(std::log(static_cast<double>(sweep.n_list[j])));
            ly.push_back(std::log(sweep.sup_distances[j]));
        }
    }
    sweep.fitted_slope = lx.size() >= 2 ? fit_line(lx, ly).slope : 0.0;
    return sweep;
}

}  // namespace vfl
