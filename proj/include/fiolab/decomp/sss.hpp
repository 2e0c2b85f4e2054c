#pragma once

// Seeger-Sogge-Stein localized amplitudes: per (j, nu) the phase is
// linearized at the cone direction,
//   Phi(x, xi) = phi(x, xi) - <grad_xi phi(x, xi^nu_j), xi>,
//   A^nu_j(x, xi) = e^{i Phi} a(x, xi) chi^nu_j(xi) Psi_j(xi),
// and the derivative estimates of Phi are verified in the frame rotated so
// that the first axis points along xi^nu_j:
//   |d_parallel Phi| ~ 2^{-j},  |grad_perp Phi| ~ 2^{-j/2},
//   |d^2_parallel Phi| <= C_2 2^{-2j},  |d^2_perp Phi| <= C_2' 2^{-j}.

#include "fiolab/core/random_fields.hpp"
#include "fiolab/decomp/cone_cover.hpp"
#include "fiolab/decomp/littlewood_paley.hpp"
#include "fiolab/symbols/phase.hpp"

namespace fiolab {

struct PhiCheckReport {
    // suprema of rotated-frame derivatives over the (j, nu) support
    double sup_d1_parallel = 0.0;
    double sup_d1_perp = 0.0;
    double sup_d2_parallel = 0.0;
    double sup_d2_perp = 0.0;
    // the same normalized by the expected dyadic rates
    double c1_parallel = 0.0;   // sup |d Phi|      * 2^{j}
    double c1_perp = 0.0;       // sup |grad' Phi|  * 2^{j/2}
    double c2_parallel = 0.0;   // sup |d^2 Phi|    * 2^{2j}
    double c2_perp = 0.0;       // sup |d^2' Phi|   * 2^{j}
    int probes = 0;
    bool pass = false;
};

struct SssPiece {
    int level = 0;
    int nu = 0;
    std::function<cplx(const Vec&, const Vec&)> amplitude;  // A^nu_j(x, xi)
    std::function<Vec(const Vec&)> t;                       // grad_xi phi(x, xi^nu_j)
    std::function<double(const Vec&, const Vec&)> phi;      // the reduced phase Phi
    PhiCheckReport phi_check;
    double xi_support_measure = 0.0;  // active dual cells times cell measure
};

namespace detail {

template <class F>
double directional_d1(F&& f, const Vec& xi, const Vec& dir, double h) {
    return (f(plus(xi, scaled(dir, h))) - f(plus(xi, scaled(dir, -h)))) / (2.0 * h);
}
template <class F>
double directional_d2(F&& f, const Vec& xi, const Vec& dir, double h) {
    return (f(plus(xi, scaled(dir, h))) - 2.0 * f(xi) + f(plus(xi, scaled(dir, -h)))) / (h * h);
}

}  // namespace detail

inline SssPiece sss_localize(const Amplitude& a, const Phase& phi, int j, int nu,
                             const ConeCover& cover, const LittlewoodPaley& lp) {
    if (a.arity != 1) throw std::invalid_argument("sss_localize: arity-1 amplitudes only");
    if (!phi.homogeneous)
        throw std::invalid_argument("sss_localize: the Phi estimates need a homogeneous phase");
    if (j < 1 || j > lp.j_max()) throw std::invalid_argument("sss_localize: level out of range");
    if (nu < 0 || nu >= cover.count()) throw std::invalid_argument("sss_localize: bad cone index");

    const GridSpec grid = cover.grid();
    const int dim = grid.dim;
    const Vec dir = cover.directions()[nu];

    SssPiece piece;
    piece.level = j;
    piece.nu = nu;
    piece.t = [phi, dir](const Vec& x) { return phi.grad_xi(x, dir); };
    piece.phi = [phi, dir](const Vec& x, const Vec& xi) {
        return phi.eval(x, xi) - dot(phi.grad_xi(x, dir), xi, 2);
    };
    auto reduced = piece.phi;
    auto aev = a.eval;
    piece.amplitude = [reduced, aev, cover, lp, j, nu](const Vec& x, const Vec& xi) -> cplx {
        const double cut = cover.chi(nu, xi) * lp.psi(j, xi);
        if (cut == 0.0) return 0.0;
        const Vec freqs[1] = {xi};
        return std::exp(iu * reduced(x, xi)) * aev(x, freqs) * cut;
    };

    // support measure of chi^nu_j Psi_j on the dual grid
    double cells = 0.0;
    for (std::size_t i = 0; i < grid.total_points(); ++i) {
        const Vec xi = grid.frequency(i);
        if (norm2(xi, dim) == 0.0) continue;
        if (cover.chi(nu, xi) * lp.psi(j, xi) > 1e-14) cells += 1.0;
    }
    piece.xi_support_measure = cells * grid.freq_cell_measure();

    // rotated-frame derivative check at probes spread over the support
    const Vec perp{-dir[1], dir[0]};
    const double half_angle =
        dim == 2 ? 2.0 * std::asin(std::min(1.0, std::pow(2.0, -0.5 * j))) : 0.0;
    const double th0 = std::atan2(dir[1], dir[0]);
    PhiCheckReport rep;
    std::vector<Vec> xs = {Vec{0.0, 0.0}, Vec{0.7, dim == 2 ? -0.4 : 0.0},
                           Vec{-0.9, dim == 2 ? 0.6 : 0.0}};
    for (const Vec& x : xs) {
        auto f = [&](const Vec& z) { return reduced(x, z); };
        for (double r : {std::ldexp(1.0, j - 1) * 1.05, std::ldexp(1.0, j) * 0.8,
                         std::ldexp(1.0, j) * 1.0, std::ldexp(1.0, j) * 1.4,
                         std::ldexp(1.0, j + 1) * 0.95}) {
            for (double frac : {-0.95, -0.5, 0.0, 0.45, 0.9}) {
                Vec xi;
                if (dim == 1) {
                    if (frac != 0.0) continue;
                    xi = scaled(dir, r);
                } else {
                    const double th = th0 + frac * half_angle;
                    xi = {r * std::cos(th), r * std::sin(th)};
                }
                const double h = 0.01 * r;
                rep.sup_d1_parallel =
                    std::max(rep.sup_d1_parallel, std::abs(detail::directional_d1(f, xi, dir, h)));
                rep.sup_d2_parallel =
                    std::max(rep.sup_d2_parallel, std::abs(detail::directional_d2(f, xi, dir, h)));
                if (dim == 2) {
                    rep.sup_d1_perp =
                        std::max(rep.sup_d1_perp, std::abs(detail::directional_d1(f, xi, perp, h)));
                    rep.sup_d2_perp =
                        std::max(rep.sup_d2_perp, std::abs(detail::directional_d2(f, xi, perp, h)));
                }
                ++rep.probes;
            }
        }
    }
    rep.c1_parallel = rep.sup_d1_parallel * std::ldexp(1.0, j);
    rep.c1_perp = rep.sup_d1_perp * std::pow(2.0, 0.5 * j);
    rep.c2_parallel = rep.sup_d2_parallel * std::ldexp(1.0, 2 * j);
    rep.c2_perp = rep.sup_d2_perp * std::ldexp(1.0, j);
    rep.pass = std::isfinite(rep.c2_parallel) && std::isfinite(rep.c2_perp) &&
               rep.c2_parallel <= 100.0 && rep.c2_perp <= 100.0;
    piece.phi_check = rep;
    return piece;
}

// Wave packet probe: unit-L^2 field whose spectrum sits inside the (j, nu)
// cone-shell, with a random spatial center.
inline Field random_wave_packet(const ConeCover& cover, const LittlewoodPaley& lp, int nu,
                                std::uint64_t seed) {
    const GridSpec& grid = cover.grid();
    const int j = cover.level();
    if (std::ldexp(1.0, j + 1) > 0.95 * grid.nyquist())
        throw std::invalid_argument("random_wave_packet: cone-shell exceeds the Nyquist bound");
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0xda3e39cb94b95bdbull);
    std::uniform_real_distribution<double> ux(-grid.half_extent / 8.0, grid.half_extent / 8.0);
    Vec x0{};
    for (int d = 0; d < grid.dim; ++d) x0[d] = ux(rng);
    const double center = std::ldexp(1.0, j);
    const double width = std::ldexp(1.0, j - 2);
    return random_spectral_packet(grid, [&, x0](const Vec& xi) -> cplx {
        if (norm2(xi, grid.dim) == 0.0) return 0.0;
        const double cut = cover.chi(nu, xi) * lp.psi(j, xi);
        if (cut == 0.0) return 0.0;
        const double rr = norm2(xi, grid.dim) - center;
        return cut * std::exp(-0.5 * rr * rr / (width * width)) *
               std::exp(-iu * dot(x0, xi, grid.dim));
    });
}

}  // namespace fiolab
