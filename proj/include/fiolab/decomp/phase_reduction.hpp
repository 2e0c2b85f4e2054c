#pragma once

// Reduction of a homogeneous SND phase to patches on the sphere: on each
// patch with center zeta_l,
//   phi(x, xi) = psi_l(x, xi) + <t_l(x), xi>,   t_l(x) = grad_xi phi(x, zeta_l),
// where psi_l = phi - <t_l, xi> has first xi-derivatives bounded by the
// patch diameter.  Off the patch cone, psi_l is extended by clamping the
// angular argument to the patch closure (operators only evaluate psi_l on
// the patch, so the extension just needs to keep the derivative bounds).

#include "fiolab/decomp/cone_cover.hpp"
#include "fiolab/symbols/verify.hpp"

namespace fiolab {

struct PhasePatch {
    Vec center{};                                       // zeta_l on the sphere
    std::function<double(const Vec&)> cutoff;           // Xi_l(xi), degree-0 homogeneous
    Phase psi;                                          // the bounded-gradient part
    std::function<Vec(const Vec&)> t;                   // x -> grad_xi phi(x, zeta_l)
    double diameter = 0.0;                              // patch diameter d
    double max_first_derivative = 0.0;                  // measured sup |grad psi_l| on the patch
};

struct ReducedPhase {
    int dim = 1;
    std::vector<PhasePatch> patches;
};

namespace detail {

// Clamp the direction of xi into the arc [th0 - half, th0 + half]; returns
// the clamped unit vector (n = 2).
inline Vec clamp_direction(const Vec& xi, double th0, double half) {
    double dth = wrap_angle(std::atan2(xi[1], xi[0]) - th0);
    dth = std::clamp(dth, -half, half);
    return {std::cos(th0 + dth), std::sin(th0 + dth)};
}

}  // namespace detail

inline ReducedPhase phase_reduce(const Phase& phi, int dim, int patch_count) {
    if (!phi.homogeneous) throw std::invalid_argument("phase_reduce: phase must be homogeneous");
    const auto snd = verify_snd(phi, dim);
    if (!snd.ok) throw std::invalid_argument("phase_reduce: phase fails the SND check");
    if (dim == 2 && patch_count < 4)
        throw std::invalid_argument("phase_reduce: need at least 4 patches for n = 2");

    ReducedPhase out;
    out.dim = dim;
    const int m = dim == 1 ? 2 : patch_count;
    const double delta = 2.0 * pi / m;

    for (int l = 0; l < m; ++l) {
        PhasePatch patch;
        double th0 = 0.0;
        if (dim == 1) {
            patch.center = {l == 0 ? 1.0 : -1.0, 0.0};
            patch.diameter = 0.0;  // each half-line is a single direction
            const bool positive = l == 0;
            patch.cutoff = [positive](const Vec& xi) {
                if (xi[0] == 0.0) return 0.0;
                return (xi[0] > 0.0) == positive ? 1.0 : 0.0;
            };
        } else {
            th0 = l * delta;
            patch.center = {std::cos(th0), std::sin(th0)};
            patch.diameter = detail::chord(delta);  // arc width as chord
            // smooth partition on the circle: same normalized-bump idiom as
            // the cone cover, with patch-scaled width
            const double half = 0.75 * delta;
            patch.cutoff = [m, delta, half, th0](const Vec& xi) {
                if (norm2(xi, 2) == 0.0) return 0.0;
                const double th = std::atan2(xi[1], xi[0]);
                auto w = [&](double center) {
                    return bump(detail::wrap_angle(th - center) / half);
                };
                double denom = 0.0;
                for (int k = 0; k < m; ++k) denom += w(k * delta);
                return denom > 0.0 ? w(th0) / denom : 0.0;
            };
        }

        const Vec zeta = patch.center;
        patch.t = [phi, zeta](const Vec& x) { return phi.grad_xi(x, zeta); };

        Phase psi;
        psi.name = phi.name + "-reduced";
        psi.homogeneous = true;
        psi.origin_singular = phi.origin_singular;
        psi.declared_k = 1;
        const double half_angle = dim == 2 ? 0.5 * delta : 0.0;
        if (dim == 1) {
            // by Euler homogeneity psi vanishes identically on a half-line patch
            psi.eval = [](const Vec&, const Vec&) { return 0.0; };
            psi.grad_xi = [](const Vec&, const Vec&) { return Vec{0.0, 0.0}; };
            psi.mixed_hessian = [](const Vec&, const Vec&) { return Mat2{}; };
        } else {
            psi.eval = [phi, zeta, th0, half_angle](const Vec& x, const Vec& xi) {
                const double r = norm2(xi, 2);
                if (r == 0.0) return 0.0;
                const Vec u = detail::clamp_direction(xi, th0, half_angle);
                return r * (phi.eval(x, u) - dot(phi.grad_xi(x, zeta), u, 2));
            };
            // exact on the patch; off the patch the clamped formula keeps the
            // gradient bounded, which is all downstream consumers rely on
            psi.grad_xi = [phi, zeta, th0, half_angle](const Vec& x, const Vec& xi) {
                const Vec u = detail::clamp_direction(xi, th0, half_angle);
                return minus(phi.grad_xi(x, u), phi.grad_xi(x, zeta));
            };
            psi.mixed_hessian = [phi, zeta, th0, half_angle](const Vec& x, const Vec& xi) {
                const Vec u = detail::clamp_direction(xi, th0, half_angle);
                Mat2 h = phi.mixed_hessian(x, u);
                const Mat2 h0 = phi.mixed_hessian(x, zeta);
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) h.m[r][c] -= h0.m[r][c];
                return h;
            };
        }
        patch.psi = psi;

        // measure sup |grad psi| over on-patch probes
        double sup = 0.0;
        for (const Vec x : {Vec{0.0, 0.0}, Vec{0.8, dim == 2 ? -0.5 : 0.0}}) {
            for (double frac : {-0.99, -0.5, 0.0, 0.5, 0.99}) {
                Vec u = patch.center;
                if (dim == 2) {
                    const double th = th0 + frac * half_angle;
                    u = {std::cos(th), std::sin(th)};
                }
                for (double r : {0.5, 1.0, 2.0}) {
                    const Vec g = patch.psi.grad_xi(x, scaled(u, r));
                    sup = std::max(sup, norm2(g, dim));
                }
            }
        }
        patch.max_first_derivative = sup;
        out.patches.push_back(std::move(patch));
    }
    return out;
}

}  // namespace fiolab
