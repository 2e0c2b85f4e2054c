#pragma once

// Decay-exponent fitting: ordinary least squares of log2(quantity) against
// the level (or log-abscissa) supplied by the caller.

#include "fiolab/common.hpp"

namespace fiolab {

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    std::vector<std::pair<double, double>> points;  // (abscissa, log2 quantity)
};

inline DecayFit fit_decay_exponent(std::span<const std::pair<double, double>> points) {
    if (points.size() < 4)
        throw std::invalid_argument("fit_decay_exponent: need at least 4 points");
    std::vector<double> xs, ys;
    DecayFit fit;
    for (const auto& [x, q] : points) {
        if (!(q > 0.0))
            throw std::invalid_argument("fit_decay_exponent: quantities must be positive");
        xs.push_back(x);
        const double y = std::log2(q);
        ys.push_back(y);
        fit.points.emplace_back(x, y);
    }
    const LineFit lf = least_squares(xs, ys);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.r_squared = lf.r_squared;
    return fit;
}

}  // namespace fiolab
