#pragma once

// Probe-based verification of phase-class membership (Phi^k) and of the
// strong non-degeneracy condition |det d^2 phi / dx dxi| >= c > 0.

#include <cmath>

#include "fiolab/symbols/phase.hpp"

namespace fiolab {

struct PhaseProbeSet {
    std::vector<Vec> xs;   // spatial probes; bounds are uniform in x, so a unit box suffices
    std::vector<Vec> xis;  // frequency probes on 1/2 <= |xi| <= 2

    static PhaseProbeSet standard(int dim) {
        PhaseProbeSet p;
        const double coords[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
        if (dim == 1) {
            for (double c : coords) p.xs.push_back({c, 0.0});
            for (double r : {0.5, 0.75, 1.0, 1.5, 2.0}) {
                p.xis.push_back({r, 0.0});
                p.xis.push_back({-r, 0.0});
            }
        } else {
            for (double c0 : coords)
                for (double c1 : coords) p.xs.push_back({c0, c1});
            for (double r : {0.5, 0.75, 1.0, 1.5, 2.0})
                for (int k = 0; k < 12; ++k) {
                    const double th = 2.0 * pi * (k + 0.25) / 12.0;
                    p.xis.push_back({r * std::cos(th), r * std::sin(th)});
                }
        }
        return p;
    }
};

struct PhaseClassReport {
    bool ok = false;
    double worst_constant = 0.0;
    MultiIndex worst_alpha{}, worst_beta{};
    Vec worst_x{}, worst_xi{};
};

namespace detail {

// d^alpha_xi d^beta_x phi by composed central differences (no Richardson;
// the verification measures boundedness constants, not tight values).
inline double phase_mixed_derivative(const Phase& phi, const Vec& x, const Vec& xi,
                                     const MultiIndex& alpha, const MultiIndex& beta, int dim) {
    const double h_xi = 0.02 * std::max(0.25, norm2(xi, dim));
    const double h_x = 0.02;
    double acc = 0.0;
    for (const auto& [ox, wx] : fd::stencil(beta, h_x))
        for (const auto& [oxi, wxi] : fd::stencil(alpha, h_xi))
            acc += wx * wxi * phi.eval(plus(x, ox), plus(xi, oxi));
    return acc;
}

}  // namespace detail

// Checks sup over probes of |xi|^{|alpha|-1} |d^alpha_xi d^beta_x phi| for
// every pair with k <= |alpha|+|beta| <= max_order against a cap.
// Homogeneity extends the check beyond the probed annulus.
inline PhaseClassReport verify_phase_class(const Phase& phi, int dim, int k, int max_order,
                                           const PhaseProbeSet& probes, double cap = 1e3) {
    check_phase_consistency(phi, dim);
    if (max_order < k) throw std::invalid_argument("verify_phase_class: max_order < k");

    PhaseClassReport rep;
    const auto alphas = multi_indices_upto(dim, max_order);
    for (const auto& alpha : alphas) {
        for (const auto& beta : alphas) {
            const int total = order(alpha) + order(beta);
            if (total < k || total > max_order) continue;
            for (const auto& x : probes.xs) {
                for (const auto& xi : probes.xis) {
                    const double d = detail::phase_mixed_derivative(phi, x, xi, alpha, beta, dim);
                    const double weighted =
                        std::pow(norm2(xi, dim), order(alpha) - 1) * std::abs(d);
                    if (!std::isfinite(weighted)) {
                        rep.ok = false;
                        rep.worst_constant = std::numeric_limits<double>::infinity();
                        return rep;
                    }
                    if (weighted > rep.worst_constant) {
                        rep.worst_constant = weighted;
                        rep.worst_alpha = alpha;
                        rep.worst_beta = beta;
                        rep.worst_x = x;
                        rep.worst_xi = xi;
                    }
                }
            }
        }
    }
    rep.ok = rep.worst_constant <= cap;
    return rep;
}

inline PhaseClassReport verify_phase_class(const Phase& phi, int dim, int k, int max_order = 3) {
    return verify_phase_class(phi, dim, k, max_order, PhaseProbeSet::standard(dim));
}

struct SndReport {
    double min_det = std::numeric_limits<double>::infinity();
    bool ok = false;
    bool singular_evaluation = false;
};

inline SndReport verify_snd(const Phase& phi, int dim, const PhaseProbeSet& probes,
                            double c0 = 1e-2) {
    SndReport rep;
    for (const auto& x : probes.xs) {
        for (const auto& xi : probes.xis) {
            const double det = phi.mixed_hessian(x, xi).det(dim);
            if (!std::isfinite(det)) {
                rep.singular_evaluation = true;
                rep.ok = false;
                return rep;
            }
            rep.min_det = std::min(rep.min_det, std::abs(det));
        }
    }
    rep.ok = rep.min_det >= c0;
    return rep;
}

inline SndReport verify_snd(const Phase& phi, int dim, double c0 = 1e-2) {
    return verify_snd(phi, dim, PhaseProbeSet::standard(dim), c0);
}

}  // namespace fiolab
