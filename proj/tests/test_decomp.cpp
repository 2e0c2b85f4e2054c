#include <catch2/catch_amalgamated.hpp>

#include "fiolab/decomp/fourier_series.hpp"
#include "fiolab/decomp/littlewood_paley.hpp"
#include "fiolab/decomp/phase_reduction.hpp"
#include "fiolab/decomp/sss.hpp"
#include "fiolab/symbols/catalog.hpp"

using namespace fiolab;

TEST_CASE("Littlewood-Paley shells partition the resolved band exactly") {
    const GridSpec g = make_grid(1, 16.0, 1024);
    const auto lp = LittlewoodPaley::build(g);
    CHECK(lp.j_max() >= 5);

    const double band = 0.9 * g.nyquist();
    for (std::size_t i = 0; i < g.total_points(); ++i) {
        if (norm2(g.frequency(i), 1) > band) continue;
        CHECK(std::abs(lp.partial_sum(i, lp.j_max()) - 1.0) <= 1e-12);
    }

    // supports: Psi_0 in |xi| <= 2, Psi_j in the dyadic shell
    CHECK(lp.psi(3, Vec{1.0, 0.0}) == 0.0);
    CHECK(lp.psi(0, Vec{2.5, 0.0}) == 0.0);
    CHECK(lp.psi(2, Vec{3.0, 0.0}) > 0.0);
    for (int j = 1; j <= lp.j_max(); ++j) {
        const double lo = std::ldexp(1.0, j - 1), hi = std::ldexp(1.0, j + 1);
        CHECK(lp.psi(j, Vec{lo * 0.98, 0.0}) == 0.0);
        CHECK(lp.psi(j, Vec{hi * 1.02, 0.0}) == 0.0);
    }

    // only shells 1 and 2 are active at |xi| = 3
    double s = 0.0;
    for (int j = 0; j <= 2; ++j) s += lp.psi(j, Vec{3.0, 0.0});
    CHECK(s == Catch::Approx(1.0).margin(1e-12));

    CHECK_THROWS_AS(LittlewoodPaley::build(make_grid(1, 4.0, 8)), std::invalid_argument);
}

TEST_CASE("Littlewood-Paley pieces reassemble band-limited fields") {
    for (int dim : {1, 2}) {
        const GridSpec g = make_grid(dim, 8.0, dim == 1 ? 512 : 64);
        const auto lp = LittlewoodPaley::build(g);
        const Field u = random_test_function(g, ProbeFamily::band_limited_noise, 21);
        const SpectralField uh = fourier_transform(u);

        Field sum = Field::zeros(g);
        for (int j = 0; j <= lp.j_max(); ++j) {
            SpectralField piece = uh;
            const auto& shell = lp.shell(j);
            for (std::size_t i = 0; i < piece.coefficients.size(); ++i)
                piece.coefficients[i] *= shell[i];
            sum = sum + inverse_fourier_transform(piece);
        }
        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            err += std::norm(sum.values[i] - u.values[i]);
            ref += std::norm(u.values[i]);
        }
        CHECK(std::sqrt(err / ref) <= 1e-10);
    }
}

TEST_CASE("cone directions: counts, spacing, covering") {
    CHECK(cone_directions(3, 1).size() == 2);
    CHECK(cone_directions(7, 1).size() == 2);

    const auto d2 = cone_directions(2, 2);
    CHECK(d2.size() >= 6);
    CHECK(d2.size() <= 13);

    for (int j = 1; j <= 8; ++j) {
        const auto dirs = cone_directions(j, 2);
        const double u = std::pow(2.0, -0.5 * j);
        // spacing
        double min_dist = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < dirs.size(); ++a)
            for (std::size_t b = a + 1; b < dirs.size(); ++b)
                min_dist = std::min(min_dist, norm2(minus(dirs[a], dirs[b]), 2));
        CHECK(min_dist >= u);
        // covering radius via a dense angular sweep
        double worst = 0.0;
        for (int k = 0; k < 2048; ++k) {
            const double th = 2.0 * pi * (k + 0.5) / 2048.0;
            const Vec v{std::cos(th), std::sin(th)};
            double nearest = std::numeric_limits<double>::infinity();
            for (const auto& d : dirs) nearest = std::min(nearest, norm2(minus(v, d), 2));
            worst = std::max(worst, nearest);
        }
        CHECK(worst <= u);
        // count stays within a factor 2 of 2 pi 2^{j/2}
        const double ideal = 2.0 * pi * std::pow(2.0, 0.5 * j);
        CHECK(dirs.size() >= 0.5 * ideal);
        CHECK(dirs.size() <= 2.0 * ideal);
    }
    CHECK(cone_directions(4, 1).size() == 2);
    CHECK_THROWS_AS(cone_directions(0, 2), std::invalid_argument);

    // ratio of counts two levels apart tracks the 2^{j/2} growth
    for (int j = 2; j <= 6; ++j) {
        const double ratio = static_cast<double>(cone_directions(j + 2, 2).size()) /
                             static_cast<double>(cone_directions(j, 2).size());
        CHECK(ratio >= 1.5);
        CHECK(ratio <= 2.5);
    }
}

TEST_CASE("cone partition sums to one and respects its support cone") {
    const GridSpec g = make_grid(2, 8.0, 128);
    for (int j : {2, 4}) {
        const ConeCover cover = cone_partition(j, g);
        // partition of unity on shell grid points
        const double lo = std::ldexp(1.0, j - 1), hi = std::ldexp(1.0, j + 1);
        int checked = 0;
        for (std::size_t i = 0; i < g.total_points(); ++i) {
            const Vec xi = g.frequency(i);
            const double r = norm2(xi, 2);
            if (r < lo || r > hi) continue;
            double s = 0.0;
            for (int nu = 0; nu < cover.count(); ++nu) s += cover.chi(nu, xi);
            CHECK(std::abs(s - 1.0) <= 1e-12);
            ++checked;
        }
        CHECK(checked > 50);

        // support inside Gamma^nu_j
        for (int nu = 0; nu < cover.count(); ++nu) {
            const Vec dir = cover.directions()[nu];
            for (int k = 0; k < 512; ++k) {
                const double th = 2.0 * pi * k / 512.0;
                const Vec u{std::cos(th), std::sin(th)};
                if (norm2(minus(u, dir), 2) > cover.aperture_chord())
                    CHECK(cover.chi(nu, scaled(u, std::ldexp(1.0, j))) == 0.0);
            }
        }
    }
}

TEST_CASE("cone partition for n = 1 is the two half-lines") {
    const GridSpec g = make_grid(1, 8.0, 256);
    const ConeCover cover = cone_partition(3, g);
    CHECK(cover.count() == 2);
    CHECK(cover.chi(0, Vec{5.0, 0.0}) == 1.0);
    CHECK(cover.chi(0, Vec{-5.0, 0.0}) == 0.0);
    CHECK(cover.chi(1, Vec{-5.0, 0.0}) == 1.0);
}

TEST_CASE("cone bump derivative constants are stable across levels") {
    const GridSpec g = make_grid(2, 8.0, 128);
    std::vector<double> c1s;
    for (int j = 2; j <= 6; ++j) {
        const auto rep = check_cone_derivatives(cone_partition(j, g));
        CHECK(rep.worst_c1 > 0.0);
        c1s.push_back(rep.worst_c1);
    }
    const auto [lo, hi] = std::minmax_element(c1s.begin(), c1s.end());
    CHECK(*hi / *lo <= 4.0);
}

TEST_CASE("sss_localize with a linear phase reduces to a bare cutoff") {
    const GridSpec g = make_grid(1, 8.0, 256);
    const auto lp = LittlewoodPaley::build(g);
    const ConeCover cover = cone_partition(3, g);
    const Amplitude a = amplitude_hormander(-1.0);
    const auto piece = sss_localize(a, phase_linear(), 3, 0, cover, lp);

    for (double r : {4.5, 6.0, 9.0}) {
        const Vec xi{r, 0.0};
        const Vec x{0.7, 0.0};
        CHECK(piece.phi(x, xi) == Catch::Approx(0.0).margin(1e-12));
        const Vec freqs[1] = {xi};
        const cplx expect = a.eval(x, freqs) * cover.chi(0, xi) * lp.psi(3, xi);
        CHECK(std::abs(piece.amplitude(x, xi) - expect) <= 1e-12);
        CHECK(piece.t(x)[0] == Catch::Approx(0.7));
    }
    CHECK(piece.phi_check.pass);
    CHECK(piece.phi_check.c2_parallel == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("sss_localize rejects inhomogeneous phases") {
    const GridSpec g = make_grid(1, 8.0, 256);
    const auto lp = LittlewoodPaley::build(g);
    const ConeCover cover = cone_partition(3, g);
    CHECK_THROWS_AS(sss_localize(amplitude_hormander(0.0), phase_schrodinger(), 3, 0, cover, lp),
                    std::invalid_argument);
}

TEST_CASE("wave-phase Phi estimates hold uniformly over cones") {
    const GridSpec g = make_grid(2, 8.0, 256);
    const auto lp = LittlewoodPaley::build(g);
    const Amplitude a = amplitude_hormander(0.0);
    const Phase wave = phase_wave();

    const ConeCover cover = cone_partition(4, g);
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (int nu = 0; nu < cover.count(); nu += 3) {
        const auto piece = sss_localize(a, wave, 4, nu, cover, lp);
        CHECK(piece.phi_check.pass);
        cmin = std::min(cmin, piece.phi_check.c2_parallel);
        cmax = std::max(cmax, piece.phi_check.c2_parallel);
    }
    CHECK(cmax / cmin <= 4.0);  // uniform over nu
}

TEST_CASE("wave-phase Phi derivative suprema scale dyadically") {
    const GridSpec g = make_grid(2, 8.0, 256);
    const auto lp = LittlewoodPaley::build(g);
    const Amplitude a = amplitude_hormander(0.0);
    const Phase wave = phase_wave();

    // first-derivative suprema drop by ~4 (parallel) and ~2 (perpendicular)
    // per two levels
    const auto p2 = sss_localize(a, wave, 2, 0, cone_partition(2, g), lp);
    const auto p4 = sss_localize(a, wave, 4, 0, cone_partition(4, g), lp);
    const double par_factor = p2.phi_check.sup_d1_parallel / p4.phi_check.sup_d1_parallel;
    const double perp_factor = p2.phi_check.sup_d1_perp / p4.phi_check.sup_d1_perp;
    CHECK(par_factor >= 2.5);
    CHECK(par_factor <= 5.5);
    CHECK(perp_factor >= 1.5);
    CHECK(perp_factor <= 2.8);
}

TEST_CASE("xi-support of a localized piece measures ~2^{j(n+1)/2}") {
    const GridSpec g = make_grid(2, 8.0, 256);
    const auto lp = LittlewoodPaley::build(g);
    const ConeCover cover = cone_partition(4, g);
    const auto piece =
        sss_localize(amplitude_hormander(0.0), phase_wave(), 4, 1, cover, lp);
    const double ideal = std::pow(2.0, 4 * 1.5);
    CHECK(piece.xi_support_measure >= ideal / 8.0);
    CHECK(piece.xi_support_measure <= ideal * 8.0);
}

TEST_CASE("phase reduction: linear phase gives zero psi and t(x) = x") {
    for (int dim : {1, 2}) {
        const auto red = phase_reduce(phase_linear(), dim, 8);
        CHECK(red.patches.size() == (dim == 1 ? 2u : 8u));
        for (const auto& patch : red.patches) {
            const Vec x{0.4, dim == 2 ? -0.9 : 0.0};
            CHECK(patch.t(x)[0] == Catch::Approx(x[0]));
            for (double th : {0.0, 1.0, 2.5, 4.0}) {
                const Vec xi{2.0 * std::cos(th), dim == 2 ? 2.0 * std::sin(th) : 0.0};
                CHECK(patch.psi.eval(x, xi) == Catch::Approx(0.0).margin(1e-12));
            }
            CHECK(patch.max_first_derivative <= 1e-12);
        }
    }
}

TEST_CASE("phase reduction of the wave phase: identity and derivative bounds") {
    const auto red = phase_reduce(phase_wave(), 2, 8);
    const Phase wave = phase_wave();
    for (const auto& patch : red.patches) {
        const double th0 = std::atan2(patch.center[1], patch.center[0]);
        for (const Vec x : {Vec{0.0, 0.0}, Vec{0.8, -0.3}}) {
            for (double frac : {-0.9, 0.0, 0.7}) {
                for (double r : {0.7, 1.0, 3.0}) {
                    const double th = th0 + frac * (pi / 8.0);
                    const Vec xi{r * std::cos(th), r * std::sin(th)};
                    // on the patch cone: phi = psi + <t(x), xi> exactly
                    const double recomposed =
                        patch.psi.eval(x, xi) + dot(patch.t(x), xi, 2);
                    CHECK(wave.eval(x, xi) ==
                          Catch::Approx(recomposed).epsilon(1e-9));
                }
            }
        }
        // |grad psi| <= C d with d the patch diameter
        CHECK(patch.max_first_derivative <= patch.diameter);
    }

    // halving the patch diameter halves the derivative bound within factor 2
    const auto red16 = phase_reduce(phase_wave(), 2, 16);
    const double b8 = red.patches[0].max_first_derivative;
    const double b16 = red16.patches[0].max_first_derivative;
    CHECK(b16 / b8 >= 0.25);
    CHECK(b16 / b8 <= 1.0);
}

TEST_CASE("phase reduction patch cutoffs form a partition") {
    const auto red = phase_reduce(phase_wave(), 2, 8);
    for (double th = 0.05; th < 2.0 * pi; th += 0.1) {
        const Vec u{std::cos(th), std::sin(th)};
        double s = 0.0;
        for (const auto& patch : red.patches) s += patch.cutoff(scaled(u, 1.7));
        CHECK(s == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("phase reduction rejects degenerate phases") {
    Phase degenerate;  // |xi| alone: mixed Hessian vanishes identically
    degenerate.name = "no-x-coupling";
    degenerate.homogeneous = true;
    degenerate.origin_singular = true;
    degenerate.eval = [](const Vec&, const Vec& xi) { return norm2(xi, 2); };
    degenerate.grad_xi = [](const Vec&, const Vec& xi) {
        return scaled(xi, 1.0 / norm2(xi, 2));
    };
    degenerate.mixed_hessian = [](const Vec&, const Vec&) { return Mat2{}; };
    CHECK_THROWS_AS(phase_reduce(degenerate, 2, 8), std::invalid_argument);
}

TEST_CASE("fourier series of a xi-independent amplitude is a single coefficient") {
    const GridSpec g = make_grid(1, 2.0, 64);
    Amplitude a;
    a.arity = 1;
    a.eval = [](const Vec& x, std::span<const Vec>) -> cplx {
        return std::cos(x[0]) + 0.3;
    };
    const auto fs = fourier_series_expand(a, g, 4.0, 6, 2.0);
    for (std::size_t kf = 0; kf < fs.coeffs.size(); ++kf) {
        const MultiIndex k = fs.k_at(kf);
        for (std::size_t xf = 0; xf < g.total_points(); xf += 7) {
            const cplx expect = k[0] == 0 ? cplx(std::cos(g.point(xf)[0]) + 0.3) : cplx(0.0);
            CHECK(std::abs(fs.coeffs[kf][xf] - expect) <= 1e-12);
        }
    }
}

TEST_CASE("fourier series picks out a pure exponential mode") {
    const GridSpec g = make_grid(1, 2.0, 32);
    const double lbox = 4.0;
    const int k0 = 3;
    Amplitude a;
    a.arity = 1;
    a.eval = [lbox](const Vec& x, std::span<const Vec> f) -> cplx {
        return (1.0 + 0.5 * x[0]) * std::exp(iu * (2.0 * pi / lbox) * (k0 * f[0][0]));
    };
    const auto fs = fourier_series_expand(a, g, lbox, 6, 2.0);
    for (std::size_t kf = 0; kf < fs.coeffs.size(); ++kf) {
        const MultiIndex k = fs.k_at(kf);
        const double mag = fs.per_k_lp_norms[kf];
        if (k[0] == k0) {
            CHECK(mag > 0.1);
        } else {
            CHECK(mag <= 1e-12);
        }
    }
    CHECK(fs.reconstruction_error <= 1e-10);
}

TEST_CASE("coefficient decay tracks the smoothness of the amplitude") {
    // three bounded xi-derivatives (jump in the fourth) => slope <= -2.5
    const GridSpec g = make_grid(1, 2.0, 32);
    const double lbox = 4.0;
    Amplitude a;
    a.arity = 1;
    a.eval = [lbox](const Vec& x, std::span<const Vec> f) -> cplx {
        const double t = 2.0 * f[0][0] / lbox;  // [-1, 1] on the box
        const double u = 1.0 - t * t;
        return radial_bump(x, 1) * (u > 0.0 ? u * u * u : 0.0);
    };
    const auto fs = fourier_series_expand(a, g, lbox, 16, 2.0);
    CHECK(fs.decay_fit.slope <= -2.5);
    CHECK(fs.decay_fit.r_squared >= 0.8);
    CHECK_FALSE(fs.aliasing_warning);
}

TEST_CASE("aliasing warning fires for rough amplitudes") {
    const GridSpec g = make_grid(1, 2.0, 32);
    Amplitude a;
    a.arity = 1;
    a.eval = [](const Vec&, std::span<const Vec> f) -> cplx {
        return std::abs(f[0][0]) < 1.0 ? 1.0 : 0.0;  // discontinuous indicator
    };
    const auto fs = fourier_series_expand(a, g, 4.0, 8, 2.0);
    CHECK(fs.aliasing_warning);
    CHECK(fs.dropped_mass > 0.0);
}

TEST_CASE("wave packets carry no spectral mass outside their cone-shell") {
    const GridSpec g = make_grid(1, 16.0, 512);
    const auto lp = LittlewoodPaley::build(g);
    const ConeCover cover = cone_partition(4, g);
    const Field u = random_wave_packet(cover, lp, 0, 0);
    const SpectralField uh = fourier_transform(u);
    double inside = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < uh.coefficients.size(); ++i) {
        const Vec xi = g.frequency(i);
        const double mass = std::norm(uh.coefficients[i]);
        const bool in_support =
            norm2(xi, 1) > 0.0 && cover.chi(0, xi) * lp.psi(4, xi) > 0.0;
        (in_support ? inside : outside) += mass;
    }
    CHECK(outside <= 1e-10 * (inside + outside));
}

TEST_CASE("wave packets beyond the Nyquist shell are rejected") {
    const GridSpec g = make_grid(1, 16.0, 256);  // nyquist ~ 25
    const auto lp = LittlewoodPaley::build(g);
    const ConeCover cover = cone_partition(4, g);  // shell [8, 32] pokes past 0.95 nyq
    CHECK_THROWS_AS(random_wave_packet(cover, lp, 0, 1), std::invalid_argument);
}
