#pragma once

// Sampled complex-valued functions on a grid and on its dual.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fiolab/core/grid.hpp"

namespace fiolab {

struct Field {
    GridSpec grid;
    std::vector<cplx> values;

    static Field zeros(const GridSpec& g) { return Field{g, std::vector<cplx>(g.total_points())}; }

    static Field sample(const GridSpec& g, const std::function<cplx(const Vec&)>& f) {
        Field out = zeros(g);
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f(g.point(i));
        return out;
    }

    void validate() const {
        if (values.size() != grid.total_points())
            throw std::invalid_argument("Field: value count does not match grid");
        for (const auto& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("Field: non-finite entry");
    }
};

struct SpectralField {
    GridSpec grid;
    std::vector<cplx> coefficients;  // indexed like GridSpec::frequency

    static SpectralField zeros(const GridSpec& g) {
        return SpectralField{g, std::vector<cplx>(g.total_points())};
    }

    static SpectralField sample(const GridSpec& g, const std::function<cplx(const Vec&)>& f) {
        SpectralField out = zeros(g);
        for (std::size_t i = 0; i < out.coefficients.size(); ++i)
            out.coefficients[i] = f(g.frequency(i));
        return out;
    }

    void validate() const {
        if (coefficients.size() != grid.total_points())
            throw std::invalid_argument("SpectralField: coefficient count does not match grid");
        for (const auto& v : coefficients)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("SpectralField: non-finite entry");
    }
};

inline Field operator+(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("Field+: grid mismatch");
    Field out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

inline Field operator-(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("Field-: grid mismatch");
    Field out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

inline Field operator*(cplx c, const Field& a) {
    Field out = a;
    for (auto& v : out.values) v *= c;
    return out;
}

// Fraction of the L^2 mass sitting in the outermost cell shell; fields meant to
// stand in for Schwartz functions on R^n must keep this below 1e-10.
inline double boundary_mass_fraction(const Field& f) {
    const int n = f.grid.points_per_axis;
    double total = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double m = std::norm(f.values[i]);
        total += m;
        const auto idx = f.grid.axis_indices(i);
        bool on_edge = false;
        for (int d = 0; d < f.grid.dim; ++d)
            if (idx[d] == 0 || idx[d] == n - 1) on_edge = true;
        if (on_edge) edge += m;
    }
    return total > 0.0 ? edge / total : 0.0;
}

}  // namespace fiolab
