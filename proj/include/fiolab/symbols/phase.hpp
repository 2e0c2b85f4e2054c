#pragma once

// Phase functions phi(x, xi) with analytic gradient and mixed Hessian rules.

#include <functional>
#include <string>

#include "fiolab/common.hpp"

namespace fiolab {

struct Phase {
    std::function<double(const Vec&, const Vec&)> eval;
    std::function<Vec(const Vec&, const Vec&)> grad_xi;
    std::function<Mat2(const Vec&, const Vec&)> mixed_hessian;  // d^2 phi / dx dxi
    bool homogeneous = false;      // positively homogeneous of degree 1 in xi
    bool origin_singular = false;  // not smooth at xi = 0 (|xi|-type phases)
    int declared_k = 2;            // claimed Phi^k membership
    std::string name;
};

// Numerical invariant check: degree-1 homogeneity where claimed, and
// agreement of the analytic gradient / mixed Hessian with central
// differences of eval at a handful of sample points.  Throws on failure.
inline void check_phase_consistency(const Phase& phi, int dim) {
    if (!phi.eval || !phi.grad_xi || !phi.mixed_hessian)
        throw std::invalid_argument("Phase: missing evaluation rule");

    const double angles[] = {0.1, 1.3, 2.9, 4.4, 5.7};
    std::vector<Vec> xs, xis;
    for (double a : angles) {
        if (dim == 1) {
            xs.push_back({0.7 * std::cos(a), 0.0});
            xis.push_back({1.3 * (std::cos(a) > 0 ? 1.0 : -1.0) * (0.5 + 0.2 * std::abs(std::sin(a))), 0.0});
        } else {
            xs.push_back({0.7 * std::cos(a), 0.4 * std::sin(a)});
            xis.push_back({1.3 * std::cos(2 * a), 1.3 * std::sin(2 * a)});
        }
    }

    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Vec& x = xs[i];
        const Vec& xi = xis[i];
        if (phi.homogeneous) {
            const double lhs = phi.eval(x, scaled(xi, 2.0));
            const double rhs = 2.0 * phi.eval(x, xi);
            if (std::abs(lhs - rhs) > 1e-9 * (std::abs(rhs) + 1.0))
                throw std::invalid_argument("Phase '" + phi.name +
                                            "': fails degree-1 homogeneity in xi");
        }
        const double h = 1e-5 * std::max(1.0, norm2(xi, dim));
        const Vec g = phi.grad_xi(x, xi);
        const Mat2 H = phi.mixed_hessian(x, xi);
        for (int d = 0; d < dim; ++d) {
            Vec xp = xi, xm = xi;
            xp[d] += h;
            xm[d] -= h;
            const double fd = (phi.eval(x, xp) - phi.eval(x, xm)) / (2.0 * h);
            if (std::abs(fd - g[d]) > 1e-5 * (std::abs(fd) + 1.0))
                throw std::invalid_argument("Phase '" + phi.name + "': grad_xi disagrees with eval");
            for (int e = 0; e < dim; ++e) {
                Vec yp = x, ym = x;
                yp[e] += h;
                ym[e] -= h;
                const double fd2 =
                    (phi.grad_xi(yp, xi)[d] - phi.grad_xi(ym, xi)[d]) / (2.0 * h);
                if (std::abs(fd2 - H.m[e][d]) > 1e-5 * (std::abs(fd2) + 1.0))
                    throw std::invalid_argument("Phase '" + phi.name +
                                                "': mixed_hessian disagrees with grad_xi");
            }
        }
    }
}

}  // namespace fiolab
