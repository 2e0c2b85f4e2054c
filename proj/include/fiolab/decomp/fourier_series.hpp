#pragma once

// Fourier-series expansion of a frequency-compact amplitude on the box
// Q = [-L_box/2, L_box/2]^nf:
//   a_k(x) = L_box^{-nf} int_Q a(x, xi) e^{-i (2pi/L_box) <k, xi>} dxi,
// computed by grid quadrature (an FFT over uniform samples of Q).  The
// per-coefficient L^p norms feed the coefficient-decay experiments, and
// the reconstruction residual quantifies the truncation to |k|_inf <= K.
//
// The frequency dimension nf is independent of the spatial dimension: a
// bilinear amplitude on n = 1 expands over the joint pair (xi, eta), nf = 2.

#include "fiolab/core/norms.hpp"
#include "fiolab/core/transform.hpp"
#include "fiolab/symbols/amplitude.hpp"

namespace fiolab {

struct FourierSeriesAmplitude {
    GridSpec xgrid;
    int freq_dim = 1;
    double box_side = 0.0;
    int k_max = 0;
    int quadrature_points = 0;                // per-axis sample count M
    std::vector<std::vector<cplx>> coeffs;    // [k flat][x flat], |k|_inf <= k_max
    std::vector<double> per_k_lp_norms;       // lp over x per kept coefficient
    double lp = 2.0;
    double reconstruction_error = 0.0;        // max abs residual at sample points
    double dropped_mass = 0.0;                // sum over dropped k of sup_x |a_k|
    bool aliasing_warning = false;            // energy on the |k|_inf = k_max ring > 1e-6 total
    LineFit decay_fit;                        // log2 ||a_k||_lp vs log2(1 + |k|)

    int side() const { return 2 * k_max + 1; }
    std::size_t k_flat(const MultiIndex& k) const {
        if (freq_dim == 1) return static_cast<std::size_t>(k[0] + k_max);
        return static_cast<std::size_t>(k[0] + k_max) * side() + (k[1] + k_max);
    }
    MultiIndex k_at(std::size_t flat) const {
        if (freq_dim == 1) return {static_cast<int>(flat) - k_max, 0};
        const int s = side();
        return {static_cast<int>(flat) / s - k_max, static_cast<int>(flat) % s - k_max};
    }

    // Truncated series evaluated at (x grid index, xi in the box).
    cplx reconstruct(std::size_t x_flat, const Vec& xi) const {
        cplx acc = 0.0;
        const double w = 2.0 * pi / box_side;
        for (std::size_t kf = 0; kf < coeffs.size(); ++kf) {
            const MultiIndex k = k_at(kf);
            const double phase = w * (k[0] * xi[0] + k[1] * xi[1]);
            acc += coeffs[kf][x_flat] * std::exp(iu * phase);
        }
        return acc;
    }
};

// eval(x, xi) with xi living in R^{nf}; arity-1 amplitudes pass their eval
// directly, joint bilinear amplitudes flatten (xi, eta) into one vector.
inline FourierSeriesAmplitude fourier_series_expand(
    const std::function<cplx(const Vec&, const Vec&)>& eval, const GridSpec& xgrid, int freq_dim,
    double box_side, int k_max, double lp) {
    if (k_max < 4) throw std::invalid_argument("fourier_series_expand: K_max must be >= 4");
    if (freq_dim != 1 && freq_dim != 2)
        throw std::invalid_argument("fourier_series_expand: freq_dim must be 1 or 2");
    if (!(box_side > 0.0)) throw std::invalid_argument("fourier_series_expand: bad box");

    int m = 32;
    while (m < 4 * k_max) m *= 2;

    FourierSeriesAmplitude out;
    out.xgrid = xgrid;
    out.freq_dim = freq_dim;
    out.box_side = box_side;
    out.k_max = k_max;
    out.quadrature_points = m;
    out.lp = lp;

    const std::size_t nx = xgrid.total_points();
    const std::size_t nk = freq_dim == 1 ? static_cast<std::size_t>(out.side())
                                         : static_cast<std::size_t>(out.side()) * out.side();
    out.coeffs.assign(nk, std::vector<cplx>(nx));

    const std::size_t nsamp = freq_dim == 1 ? static_cast<std::size_t>(m)
                                            : static_cast<std::size_t>(m) * m;
    std::vector<cplx> buf(nsamp);
    std::vector<double> dropped_sup(nsamp, 0.0);  // indexed by DFT bin; kept bins stay 0
    auto sample_point = [&](std::size_t s) -> Vec {
        Vec xi{};
        if (freq_dim == 1) {
            xi[0] = -0.5 * box_side + s * (box_side / m);
        } else {
            xi[0] = -0.5 * box_side + static_cast<double>(s / m) * (box_side / m);
            xi[1] = -0.5 * box_side + static_cast<double>(s % m) * (box_side / m);
        }
        return xi;
    };
    auto bin = [&](int k0, int k1) -> std::size_t {
        const std::size_t b0 = static_cast<std::size_t>((k0 + m) % m);
        if (freq_dim == 1) return b0;
        return b0 * m + static_cast<std::size_t>((k1 + m) % m);
    };

    double total_energy = 0.0, ring_energy = 0.0;
    const double scale = 1.0 / static_cast<double>(nsamp);
    for (std::size_t xf = 0; xf < nx; ++xf) {
        const Vec x = xgrid.point(xf);
        for (std::size_t s = 0; s < nsamp; ++s) buf[s] = eval(x, sample_point(s));
        detail::execute_dft(freq_dim, m, FFTW_FORWARD, buf);
        for (int k0 = -m / 2 + 1; k0 < m / 2; ++k0) {
            const int k1_lo = freq_dim == 2 ? -m / 2 + 1 : 0;
            const int k1_hi = freq_dim == 2 ? m / 2 : 1;
            for (int k1 = k1_lo; k1 < k1_hi; ++k1) {
                const std::size_t src = bin(k0, k1);
                const double sign = ((k0 + k1) % 2 == 0) ? 1.0 : -1.0;
                const cplx c = scale * sign * buf[src];
                const double mag = std::abs(c);
                total_energy += mag * mag;
                const int kinf = std::max(std::abs(k0), std::abs(k1));
                if (kinf == k_max) ring_energy += mag * mag;
                if (kinf <= k_max) {
                    out.coeffs[out.k_flat({k0, k1})][xf] = c;
                } else {
                    dropped_sup[src] = std::max(dropped_sup[src], mag);
                }
            }
        }
    }
    for (double v : dropped_sup) out.dropped_mass += v;
    out.aliasing_warning = ring_energy > 1e-6 * total_energy;

    out.per_k_lp_norms.resize(nk);
    for (std::size_t kf = 0; kf < nk; ++kf) {
        Field f{xgrid, out.coeffs[kf]};
        out.per_k_lp_norms[kf] = lp_norm(f, lp);
    }

    // reconstruction residual at sample points
    double err = 0.0;
    for (std::size_t xf = 0; xf < nx; xf += std::max<std::size_t>(1, nx / 8)) {
        const Vec x = xgrid.point(xf);
        for (std::size_t s = 0; s < nsamp; s += std::max<std::size_t>(1, nsamp / 16)) {
            const Vec xi = sample_point(s);
            err = std::max(err, std::abs(out.reconstruct(xf, xi) - eval(x, xi)));
        }
    }
    out.reconstruction_error = err;

    // decay fit of log2 ||a_k|| against log2(1 + |k|)
    std::vector<double> xs, ys;
    for (std::size_t kf = 0; kf < nk; ++kf) {
        const MultiIndex k = out.k_at(kf);
        const double kk = std::sqrt(static_cast<double>(k[0]) * k[0] +
                                    static_cast<double>(k[1]) * k[1]);
        const double v = out.per_k_lp_norms[kf];
        if (v <= 0.0) continue;
        xs.push_back(std::log2(1.0 + kk));
        ys.push_back(std::log2(v));
    }
    if (xs.size() >= 4) out.decay_fit = least_squares(xs, ys);
    return out;
}

inline FourierSeriesAmplitude fourier_series_expand(const Amplitude& a, const GridSpec& xgrid,
                                                    double box_side, int k_max, double lp) {
    if (a.arity != 1)
        throw std::invalid_argument("fourier_series_expand: pass arity-1 amplitudes (or flatten)");
    auto aev = a.eval;
    return fourier_series_expand(
        [aev](const Vec& x, const Vec& xi) {
            const Vec freqs[1] = {xi};
            return aev(x, freqs);
        },
        xgrid, xgrid.dim, box_side, k_max, lp);
}

}  // namespace fiolab
