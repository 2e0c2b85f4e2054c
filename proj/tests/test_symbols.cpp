#include <catch2/catch_amalgamated.hpp>

#include "fiolab/symbols/catalog.hpp"
#include "fiolab/symbols/seminorm.hpp"
#include "fiolab/symbols/verify.hpp"

using namespace fiolab;

namespace {

// <xi>^m psi(x): weight in the seminorm cancels exactly, leaving max|psi|.
Amplitude weighted_bump_amplitude(double m) {
    Amplitude a;
    a.arity = 1;
    a.name = "bump-weighted";
    a.declared = SymbolClass{std::numeric_limits<double>::infinity(), {m}, {1.0},
                             SymbolFlavor::linear};
    a.eval = [m](const Vec& x, std::span<const Vec> f) -> cplx {
        return std::pow(bracket(f[0], 2), m) * radial_bump(x, 2);
    };
    return a;
}

// Pointwise product of two arity-1 amplitudes as an arity-1 amplitude of
// declared order m1 + m2 (the calculus-lemma closure).
Amplitude pointwise_product(const Amplitude& a, const Amplitude& b) {
    Amplitude c;
    c.arity = 1;
    c.name = a.name + "*" + b.name;
    const double inv_p = (std::isinf(a.declared.p) ? 0.0 : 1.0 / a.declared.p) +
                         (std::isinf(b.declared.p) ? 0.0 : 1.0 / b.declared.p);
    c.declared = SymbolClass{inv_p == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_p,
                             {a.declared.orders[0] + b.declared.orders[0]},
                             {std::min(a.declared.rhos[0], b.declared.rhos[0])},
                             SymbolFlavor::linear};
    auto ae = a.eval, be = b.eval;
    c.eval = [ae, be](const Vec& x, std::span<const Vec> f) { return ae(x, f) * be(x, f); };
    return c;
}

}  // namespace

TEST_CASE("seminorm weight cancels for <xi>^m psi(x)") {
    const GridSpec g = make_grid(1, 2.0, 128);
    const auto probes = default_xi_probes(g);
    for (double m : {-1.0, 0.0, 1.0}) {
        const auto est = seminorm_estimate(weighted_bump_amplitude(m), 0, g, probes);
        CHECK(est.value == Catch::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("zero amplitude has zero seminorm") {
    const GridSpec g = make_grid(1, 2.0, 64);
    Amplitude zero;
    zero.arity = 1;
    zero.eval = [](const Vec&, std::span<const Vec>) -> cplx { return 0.0; };
    const auto probes = default_xi_probes(g);
    CHECK(seminorm_estimate(zero, 1, g, probes).value == 0.0);
}

TEST_CASE("rough-log amplitude: finite in L^2, divergent in L^inf under refinement") {
    const GridSpec coarse = make_grid(1, 2.0, 128);
    const GridSpec fine = make_grid(1, 2.0, 1024);

    Amplitude a2 = amplitude_rough_log(2.0);
    const auto est_l2 = seminorm_estimate(a2, 1, coarse, default_xi_probes(coarse));
    CHECK(est_l2.value > 0.0);
    CHECK(est_l2.value < 5.0);
    // stays put under refinement: the L^2 norm of log|x| psi is finite
    const auto est_l2_fine = seminorm_estimate(a2, 1, fine, default_xi_probes(fine));
    CHECK(est_l2_fine.value < 5.0);

    Amplitude ainf = amplitude_rough_log(std::numeric_limits<double>::infinity());
    const double v_coarse = seminorm_estimate(ainf, 1, coarse, default_xi_probes(coarse)).value;
    const double v_fine = seminorm_estimate(ainf, 1, fine, default_xi_probes(fine)).value;
    CHECK(v_fine > v_coarse + 1.0);  // grows like log(1/h) toward x = 0
}

TEST_CASE("seminorm is monotone in the derivative order") {
    const GridSpec g = make_grid(1, 2.0, 128);
    const auto probes = default_xi_probes(g);
    for (const Amplitude& a : {amplitude_hormander(-1.0), amplitude_rough_log(2.0),
                               weighted_bump_amplitude(0.5)}) {
        double prev = -1.0;
        for (int s = 0; s <= 2; ++s) {
            const double v = seminorm_estimate(a, s, g, probes).value;
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("analytic derivative rules agree with finite differences") {
    const GridSpec g = make_grid(1, 2.0, 64);
    Amplitude a = amplitude_hormander(-1.0);
    Amplitude a_fd = a;
    a_fd.deriv = nullptr;
    a_fd.analytic_deriv_order = 0;
    for (const Vec xi : {Vec{0.8, 0.0}, Vec{-2.5, 0.0}, Vec{7.0, 0.0}}) {
        for (const MultiIndex alpha : {MultiIndex{1, 0}, MultiIndex{2, 0}}) {
            const Field da = amplitude_xi_derivative(a, g, xi, alpha);
            const Field dfd = amplitude_xi_derivative(a_fd, g, xi, alpha);
            CHECK(std::abs(da.values[0] - dfd.values[0]) <=
                  1e-6 * std::abs(da.values[0]) + 1e-10);
        }
    }
}

TEST_CASE("product closure: Leibniz constant stays below 2^s") {
    const GridSpec g = make_grid(1, 2.0, 64);
    const auto probes = default_xi_probes(g);
    const int s = 1;
    const Amplitude a = amplitude_hormander(-1.0);
    const Amplitude b = amplitude_hormander(-0.5);
    const Amplitude ab = pointwise_product(a, b);
    const double va = seminorm_estimate(a, s, g, probes).value;
    const double vb = seminorm_estimate(b, s, g, probes).value;
    const double vab = seminorm_estimate(ab, s, g, probes).value;
    CHECK(std::isfinite(vab));
    CHECK(vab <= std::pow(2.0, s) * va * vb * (1.0 + 1e-9));
}

TEST_CASE("cutoff stability: a eta(eps xi) seminorms are uniform in eps") {
    const GridSpec g = make_grid(1, 2.0, 128);
    const auto probes = default_xi_probes(g);
    const Amplitude a = amplitude_hormander(-1.0);
    const double base = seminorm_estimate(a, 1, g, probes).value;
    for (double eps : {1.0, 0.5, 0.25, 0.125}) {
        Amplitude cut = a;
        cut.deriv = nullptr;
        cut.analytic_deriv_order = 0;
        auto ae = a.eval;
        cut.eval = [ae, eps](const Vec& x, std::span<const Vec> f) {
            return ae(x, f) * smooth_step_down(eps * norm2(f[0], 2));
        };
        const double v = seminorm_estimate(cut, 1, g, probes).value;
        CHECK(v <= 6.0 * base);
    }
}

TEST_CASE("catalog phases pass their consistency checks") {
    for (int dim : {1, 2}) {
        check_phase_consistency(phase_wave(), dim);
        check_phase_consistency(phase_linear(), dim);
        check_phase_consistency(phase_schrodinger(), dim);
        check_phase_consistency(phase_klein_gordon(), dim);
    }
    check_phase_consistency(phase_kdv(), 1);
}

TEST_CASE("homogeneous catalog phases double exactly") {
    for (const Phase& p : {phase_wave(), phase_linear()}) {
        for (int dim : {1, 2}) {
            const Vec x{0.3, -0.8};
            const Vec xi{1.1, dim == 2 ? -0.6 : 0.0};
            CHECK(p.eval(x, scaled(xi, 2.0)) ==
                  Catch::Approx(2.0 * p.eval(x, xi)).epsilon(1e-9));
        }
    }
}

TEST_CASE("verify_phase_class accepts the wave phase at k = 2") {
    const auto rep = verify_phase_class(phase_wave(), 2, 2, 3);
    CHECK(rep.ok);
    CHECK(rep.worst_constant < 10.0);
}

TEST_CASE("verify_phase_class on the linear phase at k = 1 gives constant 1") {
    const auto rep = verify_phase_class(phase_linear(), 2, 1, 3);
    CHECK(rep.ok);
    CHECK(rep.worst_constant == Catch::Approx(1.0).margin(1e-3));
}

TEST_CASE("a falsely-flagged homogeneous phase is rejected") {
    Phase bad = phase_schrodinger();  // |xi|^2 is homogeneous of degree 2, not 1
    bad.homogeneous = true;
    CHECK_THROWS_AS(verify_phase_class(bad, 2, 2, 2), std::invalid_argument);
}

TEST_CASE("verify_snd on catalog phases") {
    CHECK(verify_snd(phase_linear(), 2).min_det == Catch::Approx(1.0));
    CHECK(verify_snd(phase_wave(), 2).min_det == Catch::Approx(1.0));
    CHECK(verify_snd(phase_wave(), 2).ok);

    Phase scaled_linear = phase_linear();
    scaled_linear.name = "anisotropic-linear";
    scaled_linear.eval = [](const Vec& x, const Vec& xi) {
        return x[0] * xi[0] + 0.5 * x[1] * xi[1];
    };
    scaled_linear.grad_xi = [](const Vec& x, const Vec&) { return Vec{x[0], 0.5 * x[1]}; };
    scaled_linear.mixed_hessian = [](const Vec&, const Vec&) {
        Mat2 h;
        h.m[0][0] = 1.0;
        h.m[1][1] = 0.5;
        return h;
    };
    CHECK(verify_snd(scaled_linear, 2).min_det == Catch::Approx(0.5));
}

TEST_CASE("catalog lookups") {
    CatalogParams osc;
    osc.alpha = 0.5;
    osc.beta = 2.0;
    const auto entry = catalog("oscillatory", osc);
    const auto& a = std::get<Amplitude>(entry);
    CHECK(a.arity == 2);
    CHECK(a.declared.flavor == SymbolFlavor::joint);
    CHECK(a.declared.orders[0] == Catch::Approx(-2.0));
    CHECK(a.declared.rhos[0] == Catch::Approx(0.5));

    const auto& wave = std::get<Phase>(catalog("wave"));
    CHECK(verify_snd(wave, 2).ok);
    CHECK(verify_phase_class(wave, 2, 2, 3).ok);

    CatalogParams prod;
    prod.factors = {amplitude_hormander(-1.0), amplitude_hormander(-0.5)};
    const auto& pa = std::get<Amplitude>(catalog("product", prod));
    CHECK(pa.arity == 2);
    CHECK(pa.declared.flavor == SymbolFlavor::product);
    CHECK(pa.declared.orders.size() == 2);

    CatalogParams bad;
    bad.alpha = 1.5;
    CHECK_THROWS_AS(catalog("oscillatory", bad), std::invalid_argument);
    CHECK_THROWS_AS(catalog("no-such-symbol"), std::invalid_argument);
    CHECK(catalog_listing().size() >= 9);
}

TEST_CASE("oscillatory amplitude vanishes near the origin and oscillates outside") {
    const auto& a = std::get<Amplitude>(catalog("oscillatory"));
    const Vec x{0.0, 0.0};
    const Vec near0[2] = {{0.1, 0.0}, {0.1, 0.0}};
    CHECK(std::abs(a.eval(x, near0)) == 0.0);
    const Vec far[2] = {{3.0, 0.0}, {1.0, 0.0}};
    const double w = std::sqrt(10.0);
    CHECK(std::abs(a.eval(x, far)) == Catch::Approx(std::pow(w, -2.0)).epsilon(1e-12));
}

TEST_CASE("seminorm probe preconditions") {
    const GridSpec g = make_grid(1, 2.0, 64);
    Amplitude sing = amplitude_hormander(-1.0);
    sing.origin_singular = true;
    std::vector<Vec> probes{Vec{0.0, 0.0}};
    CHECK_THROWS_AS(seminorm_estimate(sing, 0, g, probes), std::invalid_argument);

    Amplitude multi = amplitude_product({amplitude_hormander(-1.0), amplitude_hormander(-1.0)});
    const auto ok_probes = default_xi_probes(g);
    CHECK_THROWS_AS(seminorm_estimate(multi, 0, g, ok_probes), std::invalid_argument);
}

TEST_CASE("finite-difference fallback beyond analytic rules is flagged") {
    const GridSpec g = make_grid(1, 2.0, 64);
    const auto probes = default_xi_probes(g);
    const Amplitude a = amplitude_hormander(-1.0);  // analytic rules up to order 2
    const auto est2 = seminorm_estimate(a, 2, g, probes);
    CHECK_FALSE(est2.used_finite_difference);
    const auto est3 = seminorm_estimate(a, 3, g, probes);
    CHECK(est3.used_finite_difference);
    CHECK(est3.value >= est2.value);
}
