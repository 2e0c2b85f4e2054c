#pragma once

// Bilinear and multilinear FIO evaluation: direct double quadrature over
// the product dual grid, the frozen-first-argument reduction to a rough
// linear amplitude, and the Fourier-series separated evaluation that turns
// a multilinear operator into sums of products of modulated linear FIOs.

#include <memory>

#include "fiolab/operators/linear_fio.hpp"

namespace fiolab {

struct MultilinearFio {
    Amplitude amplitude;        // arity N
    std::vector<Phase> phases;  // one per slot
    GridSpec grid;

    void validate() const {
        amplitude.validate();
        if (static_cast<int>(phases.size()) != amplitude.arity)
            throw std::invalid_argument("MultilinearFio: need one phase per slot");
    }
};

struct WorkBudget {
    double max_ops = 2e9;  // complex multiply-adds
    bool force = false;
};

// T(f, g)(x) = (2pi)^{-2n} sum_{xi, eta} a(x,xi,eta) e^{i phi1 + i phi2}
//              f_hat(xi) g_hat(eta) dxi deta
inline Field apply_bilinear(const MultilinearFio& op, const Field& f, const Field& g,
                            const WorkBudget& budget = {}) {
    op.validate();
    if (op.amplitude.arity != 2) throw std::invalid_argument("apply_bilinear: arity-2 operator");
    detail::check_probe_field(op.grid, f, "apply_bilinear(f)");
    detail::check_probe_field(op.grid, g, "apply_bilinear(g)");
    for (const Phase& p : op.phases)
        if (p.origin_singular && norm2(detail::frozen_origin(op.grid), op.grid.dim) == 0.0)
            throw std::logic_error("apply_bilinear: degenerate grid");

    const GridSpec& gr = op.grid;
    const std::size_t total = gr.total_points();
    const double ops = static_cast<double>(total) * total * total;
    if (ops > budget.max_ops && !budget.force)
        throw std::runtime_error("apply_bilinear: direct quadrature exceeds the work budget; "
                                 "use the separated evaluation or force the budget");

    const SpectralField fh = fourier_transform(f);
    const SpectralField gh = fourier_transform(g);
    const Vec frozen = detail::frozen_origin(gr);
    double weight = gr.freq_cell_measure() * gr.freq_cell_measure();
    for (int d = 0; d < 2 * gr.dim; ++d) weight /= 2.0 * pi;

    Field out = Field::zeros(gr);
    std::vector<cplx> row1(total), row2(total);
    std::vector<Vec> xi_amp(total);
    for (std::size_t xf = 0; xf < total; ++xf) {
        const Vec x = gr.point(xf);
        for (std::size_t kf = 0; kf < total; ++kf) {
            Vec xi = gr.frequency(kf);
            const bool origin = norm2(xi, gr.dim) == 0.0;
            xi_amp[kf] = (origin && op.amplitude.origin_singular) ? frozen : xi;
            const Vec xi1 = (origin && op.phases[0].origin_singular) ? frozen : xi;
            const Vec xi2 = (origin && op.phases[1].origin_singular) ? frozen : xi;
            row1[kf] = fh.coefficients[kf] == 0.0
                           ? cplx(0.0)
                           : std::exp(iu * op.phases[0].eval(x, xi1)) * fh.coefficients[kf];
            row2[kf] = gh.coefficients[kf] == 0.0
                           ? cplx(0.0)
                           : std::exp(iu * op.phases[1].eval(x, xi2)) * gh.coefficients[kf];
        }
        cplx acc = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            if (row1[i] == 0.0) continue;
            cplx inner = 0.0;
            const Vec freqs0 = xi_amp[i];
            for (std::size_t k = 0; k < total; ++k) {
                if (row2[k] == 0.0) continue;
                const Vec freqs[2] = {freqs0, xi_amp[k]};
                inner += op.amplitude.eval(x, freqs) * row2[k];
            }
            acc += row1[i] * inner;
        }
        out.values[xf] = weight * acc;
    }
    out.validate();
    return out;
}

// Frozen-f reduction: a_tilde(x, eta) = (2pi)^{-n} int e^{i phi1} a(x,xi,eta)
// f_hat(xi) dxi, returned as an evaluable arity-1 amplitude (tabulated on
// grid x dual-grid; off-grid eta falls back to a fresh quadrature so the
// finite-difference seminorm machinery can probe it).  Applying the linear
// operator (a_tilde, phi2) to g reproduces apply_bilinear(f, g).
inline Amplitude reduce_bilinear(const MultilinearFio& op, const Field& f, double r2_for_class) {
    op.validate();
    if (op.amplitude.arity != 2) throw std::invalid_argument("reduce_bilinear: arity-2 operator");
    detail::check_probe_field(op.grid, f, "reduce_bilinear(f)");

    const GridSpec gr = op.grid;
    const std::size_t total = gr.total_points();
    const SpectralField fh = fourier_transform(f);
    const Vec frozen = detail::frozen_origin(gr);
    double weight = gr.freq_cell_measure();
    for (int d = 0; d < gr.dim; ++d) weight /= 2.0 * pi;

    const Phase phi1 = op.phases[0];
    auto aev = op.amplitude.eval;
    const bool amp_singular = op.amplitude.origin_singular;
    const bool phase_singular = phi1.origin_singular;
    auto fhc = std::make_shared<std::vector<cplx>>(fh.coefficients);

    // one eta evaluation = one pass over the xi grid
    auto evaluate = [gr, total, weight, phi1, aev, amp_singular, phase_singular, frozen,
                     fhc](const Vec& x, const Vec& eta) -> cplx {
        cplx acc = 0.0;
        for (std::size_t kf = 0; kf < total; ++kf) {
            const cplx c = (*fhc)[kf];
            if (c == 0.0) continue;
            Vec xi = gr.frequency(kf);
            const bool origin = norm2(xi, gr.dim) == 0.0;
            const Vec xi_phase = (origin && phase_singular) ? frozen : xi;
            const Vec xi_amp = (origin && amp_singular) ? frozen : xi;
            const Vec freqs[2] = {xi_amp, eta};
            acc += std::exp(iu * phi1.eval(x, xi_phase)) * aev(x, freqs) * c;
        }
        return weight * acc;
    };

    // eager tabulation on the product grid
    auto table = std::make_shared<std::vector<cplx>>(total * total);
    for (std::size_t xf = 0; xf < total; ++xf) {
        const Vec x = gr.point(xf);
        for (std::size_t ef = 0; ef < total; ++ef)
            (*table)[xf * total + ef] = evaluate(x, gr.frequency(ef));
    }

    Amplitude out;
    out.arity = 1;
    out.name = "reduced-bilinear";
    const std::size_t slot = op.amplitude.declared.orders.size() > 1 ? 1 : 0;
    out.declared = SymbolClass{r2_for_class,
                               {op.amplitude.declared.orders[slot]},
                               {op.amplitude.declared.rhos[slot]},
                               SymbolFlavor::linear};
    out.origin_singular = false;
    out.eval = [gr, total, table, evaluate](const Vec& x, std::span<const Vec> freqs) -> cplx {
        // snap x to its grid cell (the reduction is tabulated in x)
        const double h = gr.spacing();
        std::array<int, 2> xi_idx{};
        for (int d = 0; d < gr.dim; ++d) {
            const long idx = std::lround((x[d] + gr.half_extent) / h);
            xi_idx[d] = static_cast<int>(std::clamp<long>(idx, 0, gr.points_per_axis - 1));
        }
        const std::size_t xf = gr.flat_index(xi_idx);
        // exact dual-grid eta hits the table; anything else is recomputed
        const Vec& eta = freqs[0];
        const double dxi = gr.freq_step();
        bool on_grid = true;
        std::array<int, 2> ei{};
        for (int d = 0; d < gr.dim; ++d) {
            const double pos = eta[d] / dxi + gr.points_per_axis / 2;
            const long idx = std::lround(pos);
            if (std::abs(pos - idx) > 1e-9 || idx < 0 || idx >= gr.points_per_axis)
                on_grid = false;
            else
                ei[d] = static_cast<int>(idx);
        }
        if (on_grid) return (*table)[xf * total + gr.flat_index(ei)];
        return evaluate(gr.point(xf), eta);
    };
    return out;
}

// ---- Fourier-series separated evaluation ----

struct SeparatedResult {
    Field result;
    double tail_bound = 0.0;        // dropped coefficient mass times input norms
    double coeff_decay_slope = 0.0; // fitted decay of the per-k coefficient mass
    bool truncation_warning = false;
    int levels = 0;
};

namespace detail {

// Expansion box for the rescaled level amplitudes.  Each a_j(x, 2^j w) is
// supported in |w| <= 2; a box just wide enough to hold the support and
// keep the periodic images outside the zeta cutoff makes the coefficient
// decay per k markedly faster than the full torus would.
inline constexpr double separation_box = 4.5;

// zeta(2^{-j} xi): 1 on the rescaled shell support |v| <= 2, 0 before the
// first periodic image at |v| = separation_box - 2.
inline double zeta_cut(double v) {
    return smooth_step_down(1.0 + (std::abs(v) - 2.0) / (separation_box - 4.05));
}

// Largest active frequency of a spectral field (support detection for the
// level count).
inline double spectral_band(const SpectralField& f) {
    double peak = 0.0;
    for (const auto& c : f.coefficients) peak = std::max(peak, std::abs(c));
    if (peak == 0.0) return 0.0;
    double band = 0.0;
    for (std::size_t i = 0; i < f.coefficients.size(); ++i)
        if (std::abs(f.coefficients[i]) > 1e-14 * peak)
            band = std::max(band, norm2(f.grid.frequency(i), f.grid.dim));
    return band;
}

}  // namespace detail

// Per LP level j, expand a_j(x, 2^j w) in a Fourier series on the torus,
// truncate to |k|_inf <= k_trunc, and evaluate
//   T(f_1..f_N) = sum_j sum_k b^j_k(x) prod_l [modulated linear FIO of f_l].
// Supports N n <= 3 (the torus expansion is a rank-Nn FFT).
inline SeparatedResult apply_multilinear_separated(const MultilinearFio& op,
                                                   std::span<const Field> inputs, int k_trunc) {
    op.validate();
    const int arity = op.amplitude.arity;
    const GridSpec gr = op.grid;
    if (arity < 2 || arity > 3)
        throw std::invalid_argument("apply_multilinear_separated: N must be 2 or 3");
    if (gr.dim * arity > 3)
        throw std::invalid_argument("apply_multilinear_separated: N*n <= 3 supported");
    if (static_cast<int>(inputs.size()) != arity)
        throw std::invalid_argument("apply_multilinear_separated: input count mismatch");
    if (k_trunc < 0) throw std::invalid_argument("apply_multilinear_separated: k_trunc >= 0");
    if (op.amplitude.declared.flavor != SymbolFlavor::product &&
        op.amplitude.declared.flavor != SymbolFlavor::joint)
        throw std::invalid_argument(
            "apply_multilinear_separated: amplitude must declare product or joint flavor");
    for (const Field& f : inputs) detail::check_probe_field(gr, f, "apply_multilinear_separated");

    const int nf = arity;  // joint frequency dimension (n = 1 per slot)

    // levels only up to the joint band actually present in the inputs;
    // higher shells would contribute nothing but truncation ringing
    double joint_band2 = 0.0;
    for (const Field& f : inputs) {
        const double b = detail::spectral_band(fourier_transform(f));
        joint_band2 += b * b;
    }
    const int levels =
        std::max(2, static_cast<int>(std::ceil(std::log2(std::sqrt(joint_band2)))) + 1);

    int m = 32;
    while (m < 4 * std::max(k_trunc, 4)) m *= 2;
    const std::size_t nsamp = nf == 2 ? static_cast<std::size_t>(m) * m
                                      : static_cast<std::size_t>(m) * m * m;
    const std::size_t nx = gr.total_points();

    double input_norm_product = 1.0;
    for (const Field& f : inputs) input_norm_product *= lp_norm(f, 2.0);

    const int side = 2 * k_trunc + 1;
    const std::size_t nk = nf == 2 ? static_cast<std::size_t>(side) * side
                                   : static_cast<std::size_t>(side) * side * side;

    Field result = Field::zeros(gr);
    double tail = 0.0;
    std::map<int, double> mass_per_kinf;  // aggregated over levels, for the decay fit

    std::vector<cplx> buf(nsamp);
    std::vector<double> dropped_sup(nsamp);
    std::vector<std::vector<cplx>> coeff(nk, std::vector<cplx>(nx));
    auto aev = op.amplitude.eval;

    const double box = detail::separation_box;
    auto torus_point = [&](std::size_t s, int axis) -> double {
        std::size_t idx = s;
        for (int a = nf - 1; a > axis; --a) idx /= m;
        return -0.5 * box + (idx % m) * (box / m);
    };
    auto bin_of = [&](std::span<const int> k) {
        std::size_t b = 0;
        for (int a = 0; a < nf; ++a) b = b * m + static_cast<std::size_t>((k[a] + m) % m);
        return b;
    };

    for (int j = 0; j < levels; ++j) {
        const double scale2j = std::ldexp(1.0, j);

        // torus coefficients of a(x, 2^j w) Psi_j(2^j |w|)
        std::fill(dropped_sup.begin(), dropped_sup.end(), 0.0);
        for (auto& c : coeff) std::fill(c.begin(), c.end(), cplx(0.0));
        for (std::size_t xf = 0; xf < nx; ++xf) {
            const Vec x = gr.point(xf);
            for (std::size_t s = 0; s < nsamp; ++s) {
                Vec freqs[3];
                double rad2 = 0.0;
                for (int a = 0; a < nf; ++a) {
                    const double w = torus_point(s, a) * scale2j;
                    freqs[a] = Vec{w, 0.0};
                    rad2 += w * w;
                }
                const double r = std::sqrt(rad2);
                double shell;
                if (j == 0) {
                    shell = smooth_step_down(r);
                } else {
                    shell = smooth_step_down(std::ldexp(r, -j)) -
                            smooth_step_down(std::ldexp(r, -j + 1));
                }
                buf[s] = shell == 0.0
                             ? cplx(0.0)
                             : shell * aev(x, std::span<const Vec>(freqs, nf));
            }
            detail::execute_dft(nf, m, FFTW_FORWARD, buf);

            // walk all stored bins; keep |k|_inf <= k_trunc
            std::array<int, 3> k{};
            auto visit = [&](auto&& self, int axis) -> void {
                if (axis == nf) {
                    int kinf = 0, ksum = 0;
                    for (int a = 0; a < nf; ++a) {
                        kinf = std::max(kinf, std::abs(k[a]));
                        ksum += k[a];
                    }
                    const std::size_t src = bin_of(std::span<const int>(k.data(), nf));
                    const double sign = (ksum % 2 == 0) ? 1.0 : -1.0;
                    const cplx c = sign * buf[src] / static_cast<double>(nsamp);
                    if (kinf <= k_trunc) {
                        std::size_t kf = 0;
                        for (int a = 0; a < nf; ++a)
                            kf = kf * side + static_cast<std::size_t>(k[a] + k_trunc);
                        coeff[kf][xf] = c;
                    } else {
                        dropped_sup[src] = std::max(dropped_sup[src], std::abs(c));
                    }
                    mass_per_kinf[kinf] = std::max(mass_per_kinf[kinf], std::abs(c));
                    return;
                }
                for (k[axis] = -m / 2 + 1; k[axis] < m / 2; ++k[axis]) self(self, axis + 1);
            };
            visit(visit, 0);
        }
        for (double v : dropped_sup) tail += v * input_norm_product;

        // modulated linear FIO factors, one per (slot, k)
        std::vector<std::vector<Field>> factors(arity);
        for (int l = 0; l < arity; ++l) {
            factors[l].reserve(side);
            for (int k1 = -k_trunc; k1 <= k_trunc; ++k1) {
                LinearFio lin;
                lin.grid = gr;
                lin.phase = op.phases[l];
                lin.low_freq_cut = true;
                lin.amplitude.arity = 1;
                const double shift = (2.0 * pi / box) * k1 / scale2j;
                const double inv2j = 1.0 / scale2j;
                lin.amplitude.eval = [shift, inv2j](const Vec&,
                                                    std::span<const Vec> f) -> cplx {
                    const double v = f[0][0] * inv2j;
                    const double cut = detail::zeta_cut(v);
                    if (cut == 0.0) return 0.0;
                    return cut * std::exp(iu * shift * f[0][0]);
                };
                factors[l].push_back(apply_linear(lin, inputs[l]));
            }
        }

        // accumulate sum_k b^j_k(x) prod_l F_{j,k_l,l}(x)
        for (std::size_t kf = 0; kf < nk; ++kf) {
            std::array<int, 3> k{};
            std::size_t rem = kf;
            for (int a = nf - 1; a >= 0; --a) {
                k[a] = static_cast<int>(rem % side) - k_trunc;
                rem /= side;
            }
            const auto& b = coeff[kf];
            for (std::size_t xf = 0; xf < nx; ++xf) {
                if (b[xf] == 0.0) continue;
                cplx prod = b[xf];
                for (int l = 0; l < arity; ++l)
                    prod *= factors[l][k[l] + k_trunc].values[xf];
                result.values[xf] += prod;
            }
        }
    }

    SeparatedResult out;
    out.result = std::move(result);
    out.tail_bound = tail;
    out.levels = levels;

    std::vector<double> xs, ys;
    for (const auto& [kinf, mass] : mass_per_kinf) {
        if (mass <= 0.0) continue;
        xs.push_back(std::log2(1.0 + kinf));
        ys.push_back(std::log2(mass));
    }
    if (xs.size() >= 4) {
        out.coeff_decay_slope = least_squares(xs, ys).slope;
        out.truncation_warning = out.coeff_decay_slope > -(gr.dim + 1.0);
    }
    return out;
}

}  // namespace fiolab
