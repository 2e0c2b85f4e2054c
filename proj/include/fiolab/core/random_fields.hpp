#pragma once

// Deterministic (seeded) test-function families used as operator probes.
// All families return unit-L^2 fields whose spectrum lies safely below the
// Nyquist bound and whose boundary mass is negligible.

#include <random>
#include <string>

#include "fiolab/core/norms.hpp"
#include "fiolab/core/transform.hpp"

namespace fiolab {

enum class ProbeFamily { gaussian_packet, band_limited_noise, wave_packet };

inline std::string to_string(ProbeFamily f) {
    switch (f) {
        case ProbeFamily::gaussian_packet: return "gaussian-packet";
        case ProbeFamily::band_limited_noise: return "band-limited-noise";
        case ProbeFamily::wave_packet: return "wave-packet";
    }
    return "?";
}

namespace detail {

inline Field normalized_l2(Field f) {
    const double n = lp_norm(f, 2.0);
    if (n == 0.0) throw std::runtime_error("probe field has zero norm");
    const double inv = 1.0 / n;
    for (auto& v : f.values) v *= inv;
    return f;
}

}  // namespace detail

// Build a field from a spectral weight: u_hat(xi) = w(xi), then inverse
// transform and normalize. Wave-packet construction reuses this with the
// cone-shell cutoff as weight.
inline Field random_spectral_packet(const GridSpec& grid,
                                    const std::function<cplx(const Vec&)>& weight) {
    SpectralField F = SpectralField::sample(grid, weight);
    return detail::normalized_l2(inverse_fourier_transform(F));
}

// Modulated Gaussian with random center, width and carrier frequency.
// Constructed in spectral space so the band never exceeds Nyquist.
inline Field random_gaussian_packet(const GridSpec& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    const double L = grid.half_extent;
    const double nyq = grid.nyquist();
    const double w_min = std::max(L / 40.0, 10.0 / nyq);
    const double w_max = L / 7.0;
    if (w_min >= w_max)
        throw std::invalid_argument("random_gaussian_packet: grid too coarse for a decayed packet");

    std::uniform_real_distribution<double> uw(w_min, w_max);
    std::uniform_real_distribution<double> ux(-L / 8.0, L / 8.0);
    std::uniform_real_distribution<double> uxi(-0.25 * nyq, 0.25 * nyq);
    const double w = uw(rng);
    Vec x0{}, xi0{};
    for (int d = 0; d < grid.dim; ++d) x0[d] = ux(rng);
    for (int d = 0; d < grid.dim; ++d) xi0[d] = uxi(rng);

    return random_spectral_packet(grid, [=](const Vec& xi) {
        const Vec dxi = minus(xi, xi0);
        return std::exp(-0.5 * dot(dxi, dxi, grid.dim) * w * w) *
               std::exp(-iu * dot(x0, xi, grid.dim));
    });
}

// White noise in a band 0.05 |xi|/nyq <= 0.4 with smooth spectral shoulders,
// tapered in space by a smooth envelope so the field vanishes at the
// boundary.  The low-frequency hole keeps the origin cell empty, matching
// the frozen-phase convention of the operator quadrature (the cell's
// contribution must be negligible for probe fields).
inline Field random_band_limited_noise(const GridSpec& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x853c49e6748fea9bull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double nyq = grid.nyquist();
    const double band = 0.2 * nyq;  // upper shoulder reaches zero at 0.4 nyq

    SpectralField F = SpectralField::zeros(grid);
    for (std::size_t i = 0; i < F.coefficients.size(); ++i) {
        const Vec xi = grid.frequency(i);
        const double r = norm2(xi, grid.dim);
        const double shoulder =
            smooth_step_down(r / band) * smooth_step_up(r / (0.025 * nyq));
        if (shoulder == 0.0) continue;
        F.coefficients[i] = shoulder * cplx(gauss(rng), gauss(rng));
    }
    Field u = inverse_fourier_transform(F);

    const double L = grid.half_extent;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const Vec x = grid.point(i);
        double env = 1.0;
        for (int d = 0; d < grid.dim; ++d)
            env *= smooth_step_down(1.0 + 4.0 * (std::abs(x[d]) - L / 2.0) / L);
        u.values[i] *= env;
    }
    return detail::normalized_l2(std::move(u));
}

inline Field random_test_function(const GridSpec& grid, ProbeFamily family, std::uint64_t seed) {
    switch (family) {
        case ProbeFamily::gaussian_packet: return random_gaussian_packet(grid, seed);
        case ProbeFamily::band_limited_noise: return random_band_limited_noise(grid, seed);
        case ProbeFamily::wave_packet:
            throw std::invalid_argument(
                "random_test_function: wave-packet needs a ConeCover; use random_wave_packet");
    }
    throw std::invalid_argument("random_test_function: unknown family");
}

}  // namespace fiolab
