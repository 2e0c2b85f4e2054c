#pragma once

// Second dyadic decomposition: level-j direction sets {xi^nu_j} on the
// sphere with spacing and covering radius ~2^{-j/2}, and the associated
// degree-0-homogeneous partition of unity {chi^nu_j}.  The bumps are built
// by normalization (dividing by the nu-sum), which makes the partition
// property exact wherever the cover is defined.

#include <vector>

#include "fiolab/core/grid.hpp"
#include "fiolab/symbols/amplitude.hpp"

namespace fiolab {

namespace detail {

// Euclidean (chord) distance of two unit vectors at angular separation dth.
inline double chord(double dth) { return 2.0 * std::sin(0.5 * std::abs(dth)); }

inline double wrap_angle(double th) {
    while (th > pi) th -= 2.0 * pi;
    while (th < -pi) th += 2.0 * pi;
    return th;
}

}  // namespace detail

// Unit direction set at level j.  For n = 1 the sphere is {+1, -1} at every
// level; for n = 2 the circle is divided evenly with angular step delta_j
// chosen so that pairwise chords are >= 2^{-j/2} and the covering radius is
// <= 2^{-j/2}.
inline std::vector<Vec> cone_directions(int j, int dim) {
    if (j < 1) throw std::invalid_argument("cone_directions: j must be >= 1");
    if (dim == 1) return {Vec{1.0, 0.0}, Vec{-1.0, 0.0}};
    if (dim != 2) throw std::invalid_argument("cone_directions: only n in {1,2} supported");

    const double u = std::pow(2.0, -0.5 * j);
    // the admissible window for the angular step is [2 asin(u/2), 4 asin(u/2)]
    const double lo = 2.0 * std::asin(0.5 * u), hi = 4.0 * std::asin(0.5 * u);
    int m = std::max(4, static_cast<int>(std::lround(2.0 * pi / (1.5 * lo))));
    while (2.0 * pi / m < lo) --m;
    while (2.0 * pi / m > hi) ++m;
    const double delta = 2.0 * pi / m;
    if (delta < lo || delta > hi)
        throw std::runtime_error("cone_directions: no even division satisfies spacing+covering");

    std::vector<Vec> dirs;
    dirs.reserve(m);
    for (int nu = 0; nu < m; ++nu) dirs.push_back({std::cos(nu * delta), std::sin(nu * delta)});
    return dirs;
}

class ConeCover {
  public:
    static ConeCover build(int j, const GridSpec& grid) {
        ConeCover c;
        c.level_ = j;
        c.grid_ = grid;
        c.directions_ = cone_directions(j, grid.dim);
        c.aperture_chord_ = 2.0 * std::pow(2.0, -0.5 * j);
        if (grid.dim == 2) {
            // support half-angle: chord distance <= aperture on the sphere
            c.support_half_angle_ = 2.0 * std::asin(std::min(1.0, std::pow(2.0, -0.5 * j)));
            // partition denominator must be bounded away from zero on the circle
            for (int k = 0; k < 4096; ++k) {
                const double th = 2.0 * pi * k / 4096.0;
                if (c.weight_sum(th) < 1e-12)
                    throw std::runtime_error("ConeCover: partition denominator vanished");
            }
        }
        return c;
    }

    int level() const { return level_; }
    int count() const { return static_cast<int>(directions_.size()); }
    const GridSpec& grid() const { return grid_; }
    const std::vector<Vec>& directions() const { return directions_; }
    double aperture_chord() const { return aperture_chord_; }

    // chi^nu_j(xi): degree-0 homogeneous by construction (depends on the
    // direction of xi only); undefined at xi = 0.
    double chi(int nu, const Vec& xi) const {
        if (grid_.dim == 1) {
            if (xi[0] == 0.0) return 0.0;
            const bool positive = xi[0] > 0.0;
            return (nu == 0) == positive ? 1.0 : 0.0;
        }
        const double th = std::atan2(xi[1], xi[0]);
        const double w = weight(nu, th);
        if (w == 0.0) return 0.0;
        return w / weight_sum(th);
    }

    std::vector<double> sampled(int nu) const {
        std::vector<double> out(grid_.total_points(), 0.0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Vec xi = grid_.frequency(i);
            if (norm2(xi, grid_.dim) == 0.0) continue;
            out[i] = chi(nu, xi);
        }
        return out;
    }

    // Invariant data: minimal pairwise chord and worst covering radius.
    double min_pairwise_distance() const {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < directions_.size(); ++a)
            for (std::size_t b = a + 1; b < directions_.size(); ++b)
                best = std::min(best, norm2(minus(directions_[a], directions_[b]), grid_.dim));
        return best;
    }
    double covering_radius() const {
        if (grid_.dim == 1) return 0.0;
        double worst = 0.0;
        for (int k = 0; k < 4096; ++k) {
            const double th = 2.0 * pi * (k + 0.5) / 4096.0;
            const Vec u{std::cos(th), std::sin(th)};
            double nearest = std::numeric_limits<double>::infinity();
            for (const auto& d : directions_) nearest = std::min(nearest, norm2(minus(u, d), 2));
            worst = std::max(worst, nearest);
        }
        return worst;
    }

  private:
    double weight(int nu, double th) const {
        const double center = std::atan2(directions_[nu][1], directions_[nu][0]);
        const double dth = detail::wrap_angle(th - center);
        return bump(dth / support_half_angle_);
    }
    double weight_sum(double th) const {
        double s = 0.0;
        for (int nu = 0; nu < count(); ++nu) s += weight(nu, th);
        return s;
    }

    int level_ = 1;
    GridSpec grid_;
    std::vector<Vec> directions_;
    double aperture_chord_ = 0.0;
    double support_half_angle_ = 0.0;
};

inline ConeCover cone_partition(int j, const GridSpec& grid) { return ConeCover::build(j, grid); }

// Finite-difference check of the cone-bump derivative estimates
//   |d^alpha_xi chi^nu_j| <= C_alpha 2^{|alpha| j/2} |xi|^{-|alpha|},
// reporting the worst constant per derivative order |alpha| <= 2.
struct ConeDerivativeReport {
    double worst_c1 = 0.0;
    double worst_c2 = 0.0;
};

inline ConeDerivativeReport check_cone_derivatives(const ConeCover& cover, int nu4probe = -1) {
    ConeDerivativeReport rep;
    const int j = cover.level();
    const int dim = cover.grid().dim;
    const double root = std::pow(2.0, 0.5 * j);
    std::vector<int> nus;
    if (nu4probe >= 0) {
        nus.push_back(nu4probe);
    } else {
        for (int nu = 0; nu < std::min(cover.count(), 4); ++nu) nus.push_back(nu);
    }
    for (int nu : nus) {
        const Vec center = cover.directions()[nu];
        const double th0 = std::atan2(center[1], center[0]);
        for (double r : {std::ldexp(1.0, j - 1) * 1.1, std::ldexp(1.0, j) * 1.0,
                         std::ldexp(1.0, j + 1) * 0.9}) {
            for (double frac : {-0.8, -0.4, 0.0, 0.35, 0.75}) {
                Vec xi;
                if (dim == 1) {
                    if (frac != 0.0) continue;
                    xi = scaled(center, r);
                } else {
                    const double th = th0 + frac * 2.0 * std::asin(std::pow(2.0, -0.5 * j));
                    xi = {r * std::cos(th), r * std::sin(th)};
                }
                const double h = 1e-3 * r;
                for (const auto& alpha : multi_indices_upto(dim, 2)) {
                    const int o = order(alpha);
                    if (o == 0) continue;
                    const cplx d = fd::derivative(
                        [&](const Vec& z) -> cplx { return cover.chi(nu, z); }, xi, alpha, h);
                    const double c = std::abs(d) / (std::pow(root, o) * std::pow(r, -o));
                    if (o == 1) rep.worst_c1 = std::max(rep.worst_c1, c);
                    if (o == 2) rep.worst_c2 = std::max(rep.worst_c2, c);
                }
            }
        }
    }
    return rep;
}

}  // namespace fiolab
