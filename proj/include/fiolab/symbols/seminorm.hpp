#pragma once

// Probe-based estimation of the symbol-class seminorms
//   |a|_{p,m,s} = max over probes xi and |alpha| <= s of
//                 <xi>^{rho|alpha| - m} || d^alpha_xi a(.,xi) ||_{L^p(dx)}.
// Membership verification here is empirical by design: a worst constant
// over a documented probe set, never a proof.

#include "fiolab/core/norms.hpp"
#include "fiolab/symbols/amplitude.hpp"

namespace fiolab {

struct SeminormEstimate {
    int order = 0;          // s
    double value = 0.0;
    int samples = 0;        // number of xi probes
    Vec worst_xi{};         // frequency where the sup was attained
    bool used_finite_difference = false;
};

// Dyadic probe frequencies: a few radii per binary shell, several
// directions, staying inside the resolved band of the grid.
inline std::vector<Vec> default_xi_probes(const GridSpec& grid, double min_radius = 0.5) {
    std::vector<Vec> probes;
    const double top = 0.45 * grid.nyquist();
    for (double r = min_radius; r <= top; r *= 2.0) {
        for (double rr : {r, 1.5 * r}) {
            if (rr > top) continue;
            if (grid.dim == 1) {
                probes.push_back({rr, 0.0});
                probes.push_back({-rr, 0.0});
            } else {
                for (int k = 0; k < 8; ++k) {
                    const double th = 2.0 * pi * (k + 0.3) / 8.0;
                    probes.push_back({rr * std::cos(th), rr * std::sin(th)});
                }
            }
        }
    }
    return probes;
}

// Frequency derivative of an arity-1 amplitude as a field over the grid:
// analytic rule when available, else Richardson-extrapolated central
// differences with step h_xi = max(1e-3, 1e-3 |xi|).
inline Field amplitude_xi_derivative(const Amplitude& a, const GridSpec& grid, const Vec& xi,
                                     const MultiIndex& alpha, bool* used_fd = nullptr) {
    if (a.arity != 1) throw std::invalid_argument("amplitude_xi_derivative: arity-1 only");
    Field out = Field::zeros(grid);
    if (a.deriv && order(alpha) <= a.analytic_deriv_order) {
        const MultiIndex alphas[1] = {alpha};
        const Vec freqs[1] = {xi};
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = a.deriv(grid.point(i), freqs, alphas);
        return out;
    }
    if (used_fd) *used_fd = true;
    const double h = fd::xi_step(xi, grid.dim);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const Vec x = grid.point(i);
        out.values[i] = fd::derivative([&](const Vec& z) { return a(x, z); }, xi, alpha, h);
    }
    return out;
}

inline SeminormEstimate seminorm_estimate(const Amplitude& a, int s, const GridSpec& grid,
                                          std::span<const Vec> xi_probes) {
    a.validate();
    if (a.arity != 1) throw std::invalid_argument("seminorm_estimate: arity-1 amplitudes only");
    if (s < 0) throw std::invalid_argument("seminorm_estimate: order must be >= 0");
    if (a.origin_singular)
        for (const auto& xi : xi_probes)
            if (norm2(xi, grid.dim) < 1e-12)
                throw std::invalid_argument("seminorm_estimate: probe at singular origin");

    const double p = a.declared.p;
    const double m = a.declared.orders[0];
    const double rho = a.declared.rhos[0];

    SeminormEstimate est;
    est.order = s;
    est.samples = static_cast<int>(xi_probes.size());
    for (const auto& alpha : multi_indices_upto(grid.dim, s)) {
        for (const auto& xi : xi_probes) {
            const Field d = amplitude_xi_derivative(a, grid, xi, alpha, &est.used_finite_difference);
            const double w = std::pow(bracket(xi, grid.dim), rho * order(alpha) - m);
            const double v = w * lp_norm(d, p);
            if (v > est.value) {
                est.value = v;
                est.worst_xi = xi;
            }
        }
    }
    return est;
}

}  // namespace fiolab
