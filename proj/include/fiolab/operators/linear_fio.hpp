#pragma once

// Linear FIO evaluation by direct dual-grid quadrature:
//   T u(x) = (2pi)^{-n} sum_xi e^{i phi(x,xi)} a(x,xi) u_hat(xi) dxi.
// Homogeneous phases are undefined at xi = 0; the origin cell contributes
// with the phase frozen at the smallest shell (its weight is negligible for
// band-limited inputs, but the sum must stay well defined).

#include "fiolab/core/random_fields.hpp"
#include "fiolab/decomp/littlewood_paley.hpp"
#include "fiolab/symbols/catalog.hpp"

namespace fiolab {

struct LinearFio {
    Amplitude amplitude;  // arity 1
    Phase phase;
    GridSpec grid;
    bool low_freq_cut = false;  // must be set when the phase is origin-singular
};

namespace detail {

// Frequency actually fed to singular evaluation rules at the origin cell.
inline Vec frozen_origin(const GridSpec& g) { return Vec{g.freq_step(), 0.0}; }

inline void check_probe_field(const GridSpec& grid, const Field& u, const char* who) {
    if (!(u.grid == grid)) throw std::invalid_argument(std::string(who) + ": grid mismatch");
    u.validate();
    if (boundary_mass_fraction(u) > 1e-10)
        throw std::invalid_argument(std::string(who) +
                                    ": input field is not boundary-decayed");
}

}  // namespace detail

inline Field apply_linear(const LinearFio& op, const Field& u) {
    op.amplitude.validate();
    if (op.amplitude.arity != 1) throw std::invalid_argument("apply_linear: arity-1 amplitude");
    if (op.phase.origin_singular && !op.low_freq_cut)
        throw std::invalid_argument(
            "apply_linear: origin-singular phase requires low_freq_cut=true");
    detail::check_probe_field(op.grid, u, "apply_linear");

    const GridSpec& g = op.grid;
    const SpectralField uh = fourier_transform(u);
    const Vec frozen = detail::frozen_origin(g);
    double weight = g.freq_cell_measure();
    for (int d = 0; d < g.dim; ++d) weight /= 2.0 * pi;

    Field out = Field::zeros(g);
    const std::size_t total = g.total_points();
    for (std::size_t xf = 0; xf < total; ++xf) {
        const Vec x = g.point(xf);
        cplx acc = 0.0;
        for (std::size_t kf = 0; kf < total; ++kf) {
            const cplx c = uh.coefficients[kf];
            if (c == 0.0) continue;
            Vec xi = g.frequency(kf);
            const bool at_origin = norm2(xi, g.dim) == 0.0;
            const Vec xi_phase = (at_origin && op.phase.origin_singular) ? frozen : xi;
            const Vec xi_amp = (at_origin && op.amplitude.origin_singular) ? frozen : xi;
            const Vec freqs[1] = {xi_amp};
            acc += std::exp(iu * op.phase.eval(x, xi_phase)) * op.amplitude.eval(x, freqs) * c;
        }
        out.values[xf] = weight * acc;
        if (!std::isfinite(out.values[xf].real()) || !std::isfinite(out.values[xf].imag()))
            throw std::runtime_error("apply_linear: non-finite output at grid index " +
                                     std::to_string(xf));
    }
    return out;
}

// The dyadic piece T_{a Psi_j}; j = 0 is the low frequency part.
inline Field apply_dyadic_piece(const LinearFio& op, const LittlewoodPaley& lp, int j,
                                const Field& u) {
    if (j < 0 || j > lp.j_max()) throw std::invalid_argument("apply_dyadic_piece: bad level");
    LinearFio piece = op;
    auto base = op.amplitude.eval;
    piece.amplitude.eval = [base, lp, j](const Vec& x, std::span<const Vec> f) -> cplx {
        const double cut = lp.psi(j, f[0]);
        return cut == 0.0 ? cplx(0.0) : base(x, f) * cut;
    };
    piece.amplitude.deriv = nullptr;  // the cutoff invalidates analytic rules
    piece.amplitude.analytic_deriv_order = 0;
    return apply_linear(piece, u);
}

// ---- low-frequency kernel ----

struct KernelQuadrature {
    double half_width = 2.5;  // eta must vanish outside [-B, B]^n
    int points_per_axis = 256;
};

struct KernelSamples {
    std::vector<Vec> z;
    std::vector<cplx> values;
    bool extent_warning = false;  // z range shorter than ~10 wavelengths of the cutoff
};

// K(x, z) = (2pi)^{-n} int eta(xi) e^{i<xi,z>} e^{i psi(x,xi)} dxi, sampled
// on the requested z list.  Quadrature nodes sit at cell centers, so an
// origin-singular psi is never evaluated at xi = 0.
inline KernelSamples low_freq_kernel(const std::function<double(const Vec&)>& eta,
                                     const Phase& psi, int dim, const Vec& x,
                                     std::span<const Vec> z_list,
                                     const KernelQuadrature& quad = {}) {
    const int m = quad.points_per_axis;
    const double b = quad.half_width;
    const double step = 2.0 * b / m;
    const std::size_t nodes = dim == 1 ? static_cast<std::size_t>(m)
                                       : static_cast<std::size_t>(m) * m;

    // tabulate the xi-independent part once
    std::vector<Vec> xi(nodes);
    std::vector<cplx> base(nodes);
    std::vector<double> weights(nodes);
    double eta_peak = 0.0;
    for (std::size_t s = 0; s < nodes; ++s) {
        Vec v{};
        if (dim == 1) {
            v[0] = -b + (s + 0.5) * step;
        } else {
            v[0] = -b + (static_cast<double>(s / m) + 0.5) * step;
            v[1] = -b + (static_cast<double>(s % m) + 0.5) * step;
        }
        xi[s] = v;
        const double w = eta(v);
        weights[s] = w;
        eta_peak = std::max(eta_peak, std::abs(w));
        base[s] = w == 0.0 ? cplx(0.0) : w * std::exp(iu * psi.eval(x, v));
    }
    // effective bandwidth of the cutoff (where it carries real mass)
    double support_radius = 0.0;
    for (std::size_t s = 0; s < nodes; ++s)
        if (std::abs(weights[s]) > 1e-10 * eta_peak)
            support_radius = std::max(support_radius, norm2(xi[s], dim));

    double weight = 1.0;
    for (int d = 0; d < dim; ++d) weight *= step / (2.0 * pi);

    KernelSamples out;
    out.z.assign(z_list.begin(), z_list.end());
    out.values.resize(z_list.size());
    double max_z = 0.0;
    for (std::size_t i = 0; i < z_list.size(); ++i) {
        const Vec& z = z_list[i];
        max_z = std::max(max_z, norm2(z, dim));
        cplx acc = 0.0;
        for (std::size_t s = 0; s < nodes; ++s) {
            if (base[s] == 0.0) continue;
            acc += base[s] * std::exp(iu * dot(xi[s], z, dim));
        }
        out.values[i] = weight * acc;
    }
    if (support_radius > 0.0)
        out.extent_warning = max_z < 10.0 * (2.0 * pi / support_radius);
    return out;
}

}  // namespace fiolab
