#pragma once

// Shared small types and smooth profile functions used across the library.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fiolab {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

// Point in R^n for n <= 2; unused components stay zero.
using Vec = std::array<double, 2>;

// Multi-index in Z_+^n for n <= 2.
using MultiIndex = std::array<int, 2>;

inline double dot(const Vec& a, const Vec& b, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += a[d] * b[d];
    return s;
}

inline double norm2(const Vec& a, int dim) { return std::sqrt(dot(a, a, dim)); }

inline Vec scaled(const Vec& a, double c) { return {a[0] * c, a[1] * c}; }

inline Vec plus(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1]}; }

inline Vec minus(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1]}; }

// <xi> = (1 + |xi|^2)^{1/2}
inline double bracket(const Vec& xi, int dim) { return std::sqrt(1.0 + dot(xi, xi, dim)); }

inline int order(const MultiIndex& a) { return a[0] + a[1]; }

// 2x2 matrix, used for mixed Hessians d^2 phi / dx dxi.
struct Mat2 {
    double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

    double det(int dim) const {
        if (dim == 1) return m[0][0];
        return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    }
    static Mat2 identity() {
        Mat2 r;
        r.m[0][0] = r.m[1][1] = 1.0;
        return r;
    }
};

namespace detail {
inline double exp_profile(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
}  // namespace detail

// C^inf bump supported on [-1,1], equal to 1 at 0: exp(1 - 1/(1 - t^2)).
inline double bump(double t) {
    const double u = 1.0 - t * t;
    return u > 0.0 ? std::exp(1.0 - 1.0 / u) : 0.0;
}

// Radial bump on R^n built from the same profile, psi(0) = 1, support |x| <= 1.
inline double radial_bump(const Vec& x, int dim) { return bump(norm2(x, dim)); }

// Smooth transition: 1 for t <= 1, 0 for t >= 2, C^inf in between.
inline double smooth_step_down(double t) {
    const double a = detail::exp_profile(2.0 - t);
    const double b = detail::exp_profile(t - 1.0);
    return a / (a + b);
}

// Complement: 0 for t <= 1, 1 for t >= 2.
inline double smooth_step_up(double t) { return 1.0 - smooth_step_down(t); }

// All multi-indices alpha in Z_+^dim with |alpha| <= s, ordered by |alpha|.
inline std::vector<MultiIndex> multi_indices_upto(int dim, int s) {
    std::vector<MultiIndex> out;
    for (int total = 0; total <= s; ++total) {
        if (dim == 1) {
            out.push_back({total, 0});
        } else {
            for (int a0 = total; a0 >= 0; --a0) out.push_back({a0, total - a0});
        }
    }
    return out;
}

// Ordinary least squares of y against x. Returns {slope, intercept, r_squared}.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

inline LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares: need at least two matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) throw std::invalid_argument("least_squares: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = f.slope * x[i] + f.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    f.r_squared = ss_tot > 1e-300 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return f;
}

}  // namespace fiolab
