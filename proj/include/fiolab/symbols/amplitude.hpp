#pragma once

// Amplitudes a(x, xi_1, ..., xi_N): evaluation rules together with their
// declared symbol class, and finite-difference machinery for frequency
// derivatives when no analytic rule is attached.

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fiolab/common.hpp"

namespace fiolab {

enum class SymbolFlavor { linear, product, joint, hormander };

inline std::string to_string(SymbolFlavor f) {
    switch (f) {
        case SymbolFlavor::linear: return "linear";
        case SymbolFlavor::product: return "product";
        case SymbolFlavor::joint: return "joint";
        case SymbolFlavor::hormander: return "hormander";
    }
    return "?";
}

// Declared class membership: L^p S^m_rho and its multilinear variants.
// flavor=product carries one (order, rho) pair per slot; the joint and
// hormander flavors carry a single pair.
struct SymbolClass {
    double p = std::numeric_limits<double>::infinity();
    std::vector<double> orders{0.0};
    std::vector<double> rhos{1.0};
    SymbolFlavor flavor = SymbolFlavor::linear;
};

struct Amplitude {
    int arity = 1;
    // eval(x, freqs) with freqs.size() == arity
    std::function<cplx(const Vec&, std::span<const Vec>)> eval;
    SymbolClass declared;
    bool origin_singular = false;  // eval undefined when some xi_j = 0
    // Optional analytic frequency derivatives, one multi-index per slot.
    int analytic_deriv_order = 0;
    std::function<cplx(const Vec&, std::span<const Vec>, std::span<const MultiIndex>)> deriv;
    std::string name;

    cplx operator()(const Vec& x, const Vec& xi) const {
        const Vec freqs[1] = {xi};
        return eval(x, freqs);
    }

    void validate() const {
        if (arity < 1) throw std::invalid_argument("Amplitude: arity must be >= 1");
        if (!eval) throw std::invalid_argument("Amplitude: missing eval rule");
        if (declared.flavor == SymbolFlavor::product) {
            if (static_cast<int>(declared.orders.size()) != arity ||
                static_cast<int>(declared.rhos.size()) != arity)
                throw std::invalid_argument("Amplitude: product flavor needs one order per slot");
        } else if (declared.orders.size() != 1 || declared.rhos.size() != 1) {
            throw std::invalid_argument("Amplitude: joint/hormander/linear flavors carry one order");
        }
    }
};

// ---- central finite differences with one Richardson extrapolation ----

namespace fd {

using Stencil = std::vector<std::pair<Vec, double>>;

// Compose 1D central first-difference stencils per axis; O(h^2) accurate.
inline Stencil stencil(const MultiIndex& alpha, double h) {
    Stencil s{{Vec{0.0, 0.0}, 1.0}};
    for (int d = 0; d < 2; ++d) {
        for (int rep = 0; rep < alpha[d]; ++rep) {
            Stencil next;
            next.reserve(2 * s.size());
            for (const auto& [off, w] : s) {
                Vec p = off, m = off;
                p[d] += h;
                m[d] -= h;
                next.emplace_back(p, w / (2.0 * h));
                next.emplace_back(m, -w / (2.0 * h));
            }
            s = std::move(next);
        }
    }
    return s;
}

// FD step used for frequency derivatives throughout the library.
inline double xi_step(const Vec& xi, int dim) { return std::max(1e-3, 1e-3 * norm2(xi, dim)); }

// d^alpha f at xi, Richardson-extrapolated once: (4 D_{h/2} - D_h) / 3.
template <class F>
cplx derivative(F&& f, const Vec& xi, const MultiIndex& alpha, double h) {
    if (order(alpha) == 0) return f(xi);
    auto apply = [&](double step) {
        cplx acc = 0.0;
        for (const auto& [off, w] : stencil(alpha, step)) acc += w * f(plus(xi, off));
        return acc;
    };
    return (4.0 * apply(h / 2.0) - apply(h)) / 3.0;
}

}  // namespace fd

}  // namespace fiolab
