#pragma once

// Periodized uniform grid on [-L, L)^n and its discrete dual.
//
// Spatial points:   x_i = -L + i h,        h = 2L/N,   i = 0..N-1 per axis.
// Dual frequencies: xi_k = k pi/L,         k = -N/2..N/2-1 per axis,
// stored in ascending k order; the Nyquist bound is pi N / (2L).

#include <cstddef>
#include <stdexcept>

#include "fiolab/common.hpp"

namespace fiolab {

struct GridSpec {
    int dim = 1;
    double half_extent = 0.0;
    int points_per_axis = 0;

    static GridSpec make(int dim, double half_extent, int points_per_axis) {
        if (dim != 1 && dim != 2) throw std::invalid_argument("GridSpec: dim must be 1 or 2");
        if (!(half_extent > 0.0)) throw std::invalid_argument("GridSpec: half_extent must be positive");
        if (points_per_axis < 8) throw std::invalid_argument("GridSpec: need at least 8 points per axis");
        if ((points_per_axis & (points_per_axis - 1)) != 0)
            throw std::invalid_argument("GridSpec: points_per_axis must be a power of two");
        return GridSpec{dim, half_extent, points_per_axis};
    }

    double spacing() const { return 2.0 * half_extent / points_per_axis; }
    double freq_step() const { return pi / half_extent; }
    double nyquist() const { return pi * points_per_axis / (2.0 * half_extent); }

    std::size_t total_points() const {
        std::size_t n = static_cast<std::size_t>(points_per_axis);
        return dim == 1 ? n : n * n;
    }

    // Row-major decomposition of a flat index into per-axis indices.
    std::array<int, 2> axis_indices(std::size_t flat) const {
        if (dim == 1) return {static_cast<int>(flat), 0};
        const auto n = static_cast<std::size_t>(points_per_axis);
        return {static_cast<int>(flat / n), static_cast<int>(flat % n)};
    }

    std::size_t flat_index(const std::array<int, 2>& idx) const {
        if (dim == 1) return static_cast<std::size_t>(idx[0]);
        return static_cast<std::size_t>(idx[0]) * points_per_axis + idx[1];
    }

    Vec point(std::size_t flat) const {
        const auto idx = axis_indices(flat);
        const double h = spacing();
        Vec x{};
        for (int d = 0; d < dim; ++d) x[d] = -half_extent + idx[d] * h;
        return x;
    }

    // Signed frequency index on one axis from the stored (ascending) position.
    int freq_k(int axis_pos) const { return axis_pos - points_per_axis / 2; }

    Vec frequency(std::size_t flat) const {
        const auto idx = axis_indices(flat);
        const double dxi = freq_step();
        Vec xi{};
        for (int d = 0; d < dim; ++d) xi[d] = freq_k(idx[d]) * dxi;
        return xi;
    }

    // Quadrature weights for the two sides of the transform.
    double cell_measure() const {
        const double h = spacing();
        return dim == 1 ? h : h * h;
    }
    double freq_cell_measure() const {
        const double s = freq_step();
        return dim == 1 ? s : s * s;
    }

    bool operator==(const GridSpec&) const = default;
};

inline GridSpec make_grid(int dim, double half_extent, int points_per_axis) {
    return GridSpec::make(dim, half_extent, points_per_axis);
}

}  // namespace fiolab
