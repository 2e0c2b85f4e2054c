#pragma once

// Builtin catalog of example amplitudes and phases.  Closures are written
// with full two-component vectors; unused components are always zero, so
// the same rules serve n = 1 and n = 2.

#include <memory>
#include <variant>

#include "fiolab/symbols/amplitude.hpp"
#include "fiolab/symbols/phase.hpp"

namespace fiolab {

// ---- amplitudes ----

// <xi>^m, smooth Hormander symbol of order m.
inline Amplitude amplitude_hormander(double m, double rho = 1.0) {
    Amplitude a;
    a.arity = 1;
    a.name = "hormander";
    a.declared = SymbolClass{std::numeric_limits<double>::infinity(), {m}, {rho},
                             SymbolFlavor::hormander};
    a.eval = [m](const Vec&, std::span<const Vec> f) -> cplx {
        return std::pow(bracket(f[0], 2), m);
    };
    a.analytic_deriv_order = 2;
    a.deriv = [m](const Vec&, std::span<const Vec> f, std::span<const MultiIndex> al) -> cplx {
        const Vec& xi = f[0];
        const MultiIndex& alpha = al[0];
        const double br = bracket(xi, 2);
        switch (order(alpha)) {
            case 0: return std::pow(br, m);
            case 1: {
                const int d = alpha[0] == 1 ? 0 : 1;
                return m * xi[d] * std::pow(br, m - 2.0);
            }
            case 2: {
                int d, e;
                if (alpha[0] == 2) d = e = 0;
                else if (alpha[1] == 2) d = e = 1;
                else { d = 0; e = 1; }
                const double kron = (d == e) ? 1.0 : 0.0;
                return m * kron * std::pow(br, m - 2.0) +
                       m * (m - 2.0) * xi[d] * xi[e] * std::pow(br, m - 4.0);
            }
            default: throw std::logic_error("hormander deriv: order beyond analytic rules");
        }
    };
    return a;
}

// e^{i xi log|x|} psi(x) on n = 1, the model rough amplitude in L^p S^0_0.
// The x = 0 cell is zeroed (a null-set modification); the L^inf estimate of
// the first xi-derivative then grows like log(1/h) under grid refinement.
inline Amplitude amplitude_rough_log(double p) {
    Amplitude a;
    a.arity = 1;
    a.name = "rough-log";
    a.declared = SymbolClass{p, {0.0}, {0.0}, SymbolFlavor::linear};
    a.eval = [](const Vec& x, std::span<const Vec> f) -> cplx {
        const double ax = std::abs(x[0]);
        if (ax == 0.0) return 0.0;
        return std::exp(iu * f[0][0] * std::log(ax)) * radial_bump(x, 1);
    };
    a.analytic_deriv_order = 8;
    a.deriv = [](const Vec& x, std::span<const Vec> f, std::span<const MultiIndex> al) -> cplx {
        const double ax = std::abs(x[0]);
        if (ax == 0.0) return 0.0;
        if (al[0][1] != 0) return 0.0;  // n = 1
        const cplx base = std::exp(iu * f[0][0] * std::log(ax)) * radial_bump(x, 1);
        return std::pow(iu * std::log(ax), al[0][0]) * base;
    };
    return a;
}

// sigma(xi, eta) = e^{i|w|^alpha} |w|^{-beta} theta(w), w = (xi, eta), with a
// smooth theta vanishing near the origin.  Declared class L^inf S^{-beta}_{1-alpha}.
inline Amplitude amplitude_oscillatory(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("oscillatory amplitude: alpha must lie in (0,1)");
    if (!(beta > 0.0)) throw std::invalid_argument("oscillatory amplitude: beta must be positive");
    Amplitude a;
    a.arity = 2;
    a.name = "oscillatory";
    a.declared = SymbolClass{std::numeric_limits<double>::infinity(), {-beta}, {1.0 - alpha},
                             SymbolFlavor::joint};
    a.eval = [alpha, beta](const Vec&, std::span<const Vec> f) -> cplx {
        const double w2 = dot(f[0], f[0], 2) + dot(f[1], f[1], 2);
        const double w = std::sqrt(w2);
        const double theta = smooth_step_up(2.0 * w);  // 0 near the origin, 1 for |w| >= 1
        if (theta == 0.0) return 0.0;
        return theta * std::exp(iu * std::pow(w, alpha)) * std::pow(w, -beta);
    };
    return a;
}

// Product amplitude prod_j a_j(x, xi_j) of arity-1 factors.
inline Amplitude amplitude_product(std::vector<Amplitude> factors) {
    if (factors.empty()) throw std::invalid_argument("amplitude_product: need factors");
    Amplitude a;
    a.arity = static_cast<int>(factors.size());
    a.name = "product";
    a.declared.flavor = SymbolFlavor::product;
    a.declared.orders.clear();
    a.declared.rhos.clear();
    double inv_p = 0.0;
    int min_analytic = 1 << 20;
    bool all_deriv = true;
    for (const auto& f : factors) {
        if (f.arity != 1) throw std::invalid_argument("amplitude_product: factors must be arity 1");
        a.declared.orders.push_back(f.declared.orders[0]);
        a.declared.rhos.push_back(f.declared.rhos[0]);
        inv_p += std::isinf(f.declared.p) ? 0.0 : 1.0 / f.declared.p;
        a.origin_singular = a.origin_singular || f.origin_singular;
        min_analytic = std::min(min_analytic, f.analytic_deriv_order);
        all_deriv = all_deriv && static_cast<bool>(f.deriv);
    }
    a.declared.p = inv_p == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_p;

    auto shared = std::make_shared<std::vector<Amplitude>>(std::move(factors));
    a.eval = [shared](const Vec& x, std::span<const Vec> f) -> cplx {
        cplx prod = 1.0;
        for (std::size_t j = 0; j < shared->size(); ++j) {
            const Vec freqs[1] = {f[j]};
            prod *= (*shared)[j].eval(x, freqs);
        }
        return prod;
    };
    if (all_deriv) {
        a.analytic_deriv_order = min_analytic;
        a.deriv = [shared](const Vec& x, std::span<const Vec> f,
                           std::span<const MultiIndex> al) -> cplx {
            cplx prod = 1.0;
            for (std::size_t j = 0; j < shared->size(); ++j) {
                const Vec freqs[1] = {f[j]};
                const MultiIndex alphas[1] = {al[j]};
                prod *= (*shared)[j].deriv(x, freqs, alphas);
            }
            return prod;
        };
    }
    return a;
}

// ---- phases ----

inline Phase phase_linear() {
    Phase p;
    p.name = "linear-phase";
    p.homogeneous = true;
    p.origin_singular = false;
    p.declared_k = 1;
    p.eval = [](const Vec& x, const Vec& xi) { return dot(x, xi, 2); };
    p.grad_xi = [](const Vec& x, const Vec&) { return x; };
    p.mixed_hessian = [](const Vec&, const Vec&) { return Mat2::identity(); };
    return p;
}

// |xi| + <x, xi>: the half-wave phase, in Phi^2 and strongly non-degenerate.
inline Phase phase_wave() {
    Phase p;
    p.name = "wave";
    p.homogeneous = true;
    p.origin_singular = true;
    p.declared_k = 2;
    p.eval = [](const Vec& x, const Vec& xi) { return norm2(xi, 2) + dot(x, xi, 2); };
    p.grad_xi = [](const Vec& x, const Vec& xi) {
        const double n = norm2(xi, 2);
        return plus(scaled(xi, 1.0 / n), x);
    };
    p.mixed_hessian = [](const Vec&, const Vec&) { return Mat2::identity(); };
    return p;
}

// |xi|^2 + <x, xi>: inhomogeneous, bounded mixed derivatives of order >= 2.
inline Phase phase_schrodinger() {
    Phase p;
    p.name = "schrodinger";
    p.homogeneous = false;
    p.origin_singular = false;
    p.declared_k = 2;
    p.eval = [](const Vec& x, const Vec& xi) { return dot(xi, xi, 2) + dot(x, xi, 2); };
    p.grad_xi = [](const Vec& x, const Vec& xi) { return plus(scaled(xi, 2.0), x); };
    p.mixed_hessian = [](const Vec&, const Vec&) { return Mat2::identity(); };
    return p;
}

// <xi> + <x, xi>
inline Phase phase_klein_gordon() {
    Phase p;
    p.name = "klein-gordon";
    p.homogeneous = false;
    p.origin_singular = false;
    p.declared_k = 2;
    p.eval = [](const Vec& x, const Vec& xi) { return bracket(xi, 2) + dot(x, xi, 2); };
    p.grad_xi = [](const Vec& x, const Vec& xi) {
        return plus(scaled(xi, 1.0 / bracket(xi, 2)), x);
    };
    p.mixed_hessian = [](const Vec&, const Vec&) { return Mat2::identity(); };
    return p;
}

// xi^3 + x xi on n = 1.
inline Phase phase_kdv() {
    Phase p;
    p.name = "kdv";
    p.homogeneous = false;
    p.origin_singular = false;
    p.declared_k = 2;
    p.eval = [](const Vec& x, const Vec& xi) { return xi[0] * xi[0] * xi[0] + x[0] * xi[0]; };
    p.grad_xi = [](const Vec& x, const Vec& xi) { return Vec{3.0 * xi[0] * xi[0] + x[0], 0.0}; };
    p.mixed_hessian = [](const Vec&, const Vec&) {
        Mat2 h;
        h.m[0][0] = 1.0;
        return h;
    };
    return p;
}

// ---- name-indexed access (the CLI/config surface) ----

struct CatalogParams {
    double m = 0.0;
    double rho = 1.0;
    double p = std::numeric_limits<double>::infinity();
    double alpha = 0.5;
    double beta = 2.0;
    std::vector<Amplitude> factors;
};

using CatalogEntry = std::variant<Amplitude, Phase>;

inline CatalogEntry catalog(const std::string& name, const CatalogParams& params = {}) {
    if (name == "hormander") return amplitude_hormander(params.m, params.rho);
    if (name == "rough-log") return amplitude_rough_log(params.p);
    if (name == "oscillatory") return amplitude_oscillatory(params.alpha, params.beta);
    if (name == "product") return amplitude_product(params.factors);
    if (name == "wave") return phase_wave();
    if (name == "schrodinger") return phase_schrodinger();
    if (name == "kdv") return phase_kdv();
    if (name == "klein-gordon") return phase_klein_gordon();
    if (name == "linear-phase") return phase_linear();
    throw std::invalid_argument("catalog: unknown name '" + name + "'");
}

struct CatalogDescription {
    std::string name;
    std::string kind;  // "amplitude" or "phase"
    std::string summary;
};

inline std::vector<CatalogDescription> catalog_listing() {
    return {
        {"hormander", "amplitude", "<xi>^m, declared L^inf S^m_rho (params: m, rho)"},
        {"rough-log", "amplitude", "e^{i xi log|x|} psi(x) on n=1, declared L^p S^0_0 (param: p)"},
        {"oscillatory", "amplitude",
         "e^{i|w|^a}|w|^{-b} theta(w), arity 2, declared L^inf S^{-b}_{1-a} (params: alpha, beta)"},
        {"product", "amplitude", "prod_j a_j(x, xi_j) of arity-1 factors"},
        {"wave", "phase", "|xi| + <x,xi>; homogeneous, Phi^2, SND"},
        {"schrodinger", "phase", "|xi|^2 + <x,xi>; inhomogeneous, SND"},
        {"kdv", "phase", "xi^3 + x xi on n=1; inhomogeneous, SND"},
        {"klein-gordon", "phase", "<xi> + <x,xi>; inhomogeneous, SND"},
        {"linear-phase", "phase", "<x,xi>; the pseudodifferential phase"},
    };
}

}  // namespace fiolab
