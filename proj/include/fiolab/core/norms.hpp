#pragma once

// L^r and Lorentz L^{r,q} quasinorms of sampled fields, 0 < r <= inf.
// Each grid cell is treated as an atom of measure h^n.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fiolab/core/field.hpp"

namespace fiolab {

inline double lp_norm(const Field& f, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("lp_norm: exponent must be positive");
    if (std::isinf(r)) {
        double m = 0.0;
        for (const auto& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    const double mu = f.grid.cell_measure();
    double s = 0.0;
    for (const auto& v : f.values) s += std::pow(std::abs(v), r);
    return std::pow(s * mu, 1.0 / r);
}

// Lorentz quasinorm through the decreasing rearrangement over cell atoms:
//   ||f||_{r,q}^q = sum_i a_i^q (r/q) [((i+1) mu)^{q/r} - (i mu)^{q/r}]
// with a_0 >= a_1 >= ... the sorted cell moduli.  For q = r this telescopes
// to the L^r norm exactly; for an indicator it reproduces the analytic
// value (r/q)^{1/q} |E|^{1/r}.
inline double lorentz_norm(const Field& f, double r, double q) {
    if (!(r > 0.0) || std::isinf(r)) throw std::invalid_argument("lorentz_norm: r must be finite positive");
    if (!(q > 0.0)) throw std::invalid_argument("lorentz_norm: q must be positive");

    std::vector<double> a(f.values.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.values[i]);
    std::sort(a.begin(), a.end(), std::greater<double>());

    const double mu = f.grid.cell_measure();
    if (std::isinf(q)) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0) break;
            m = std::max(m, a[i] * std::pow((i + 1) * mu, 1.0 / r));
        }
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) break;
        const double lo = std::pow(i * mu, q / r);
        const double hi = std::pow((i + 1) * mu, q / r);
        s += std::pow(a[i], q) * (r / q) * (hi - lo);
    }
    return std::pow(s, 1.0 / q);
}

}  // namespace fiolab
