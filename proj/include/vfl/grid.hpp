#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "vfl/errors.hpp"

namespace vfl {

/// Uniform time grid t_i = i*h, i = 0..count-1, covering [0, t_max].
struct TimeGrid {
    double t_max = 0.0;
    double h = 0.0;

    TimeGrid() = default;
    TimeGrid(double tmax, double step) : t_max(tmax), h(step) {
        if (!(tmax > 0.0) || !(step > 0.0))
            throw OutOfRange("TimeGrid requires t_max > 0 and h > 0");
    }

    std::size_t count() const {
        return static_cast<std::size_t>(std::ceil(t_max / h)) + 1;
    }
    double node(std::size_t i) const { return static_cast<double>(i) * h; }

    std::vector<double> nodes() const {
        std::vector<double> out(count());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = node(i);
        return out;
    }

    TimeGrid refined(unsigned factor = 2) const { return TimeGrid(t_max, h / factor); }
};

}  // namespace vfl
