#pragma once

// The acceptance suite: one entry per criterion, each pinned to its stated
// tolerance.  Used by both the `selftest` CLI subcommand and the dedicated
// acceptance test binary.

#include "fiolab/lab/experiment.hpp"

namespace fiolab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace selftest_detail {

template <class F>
CriterionResult timed(int id, const std::string& name, F&& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        r.pass = body(r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline double rel_l2(const Field& got, const Field& expect) {
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < got.values.size(); ++i) {
        err += std::norm(got.values[i] - expect.values[i]);
        ref += std::norm(expect.values[i]);
    }
    return std::sqrt(err / ref);
}

// 1. threshold identities, exact arithmetic, tolerance zero
inline bool criterion_thresholds(std::string& detail) {
    const ExtReal inf = ExtReal::infinity();
    bool ok = true;
    for (int n : {1, 2, 3}) {
        ok = ok && (m_arc(ExtReal(1), inf, ExtReal(2), n) +
                        m_arc(ExtReal(1), ExtReal(2), ExtReal(2), n) ==
                    ExtReal(0));
        ok = ok && (m_arc(ExtReal(1), inf, inf, n) + m_arc(ExtReal(1), inf, ExtReal(2), n) ==
                    ExtReal(-(n - 1), 2));
        ok = ok && (m_arc(ExtReal(1), inf, inf, n) + m_arc(ExtReal(1), inf, ExtReal(1), n) ==
                    ExtReal(-(n - 1)));
        std::vector<ExtReal> twos{ExtReal(2), ExtReal(2)};
        ok = ok && (theorem_d_order(twos, n) == ExtReal(0));
    }
    detail = ok ? "all four identities exact" : "identity violated";
    return ok;
}

// 2. band-limited identity at 1e-9
inline bool criterion_identity(std::string& detail) {
    const GridSpec g = make_grid(1, 16.0, 512);
    const Field u = random_test_function(g, ProbeFamily::band_limited_noise, 42);
    Amplitude one;
    one.arity = 1;
    one.eval = [](const Vec&, std::span<const Vec>) -> cplx { return 1.0; };
    const Field tu = apply_linear(LinearFio{one, phase_linear(), g, false}, u);
    const double err = rel_l2(tu, u);
    detail = "rel L2 error " + detail::fmt_double(err);
    return err <= 1e-9;
}

// 3. wave-phase translation at 1e-6
inline bool criterion_translation(std::string& detail) {
    const GridSpec g = make_grid(1, 16.0, 512);
    const Field u = detail::positive_band_probe(g, 4);
    Amplitude one;
    one.arity = 1;
    one.eval = [](const Vec&, std::span<const Vec>) -> cplx { return 1.0; };
    const Field tu = apply_linear(LinearFio{one, phase_wave(), g, true}, u);
    // periodic shift by one unit (an exact number of cells on this grid)
    Field expected = Field::zeros(g);
    const long cells = std::lround(1.0 / g.spacing());
    const int n = g.points_per_axis;
    for (std::size_t i = 0; i < expected.values.size(); ++i) {
        auto idx = g.axis_indices(i);
        idx[0] = static_cast<int>(((idx[0] + cells) % n + n) % n);
        expected.values[i] = u.values[g.flat_index(idx)];
    }
    const double err = rel_l2(tu, expected);
    detail = "rel L2 error " + detail::fmt_double(err);
    return err <= 1e-6;
}

// 4. low-frequency kernel decay, n = 1 and n = 2
inline bool criterion_kernel_decay(std::string& detail) {
    bool ok = true;
    for (int n : {1, 2}) {
        ExperimentConfig cfg;
        cfg.experiment = "kernel-decay";
        cfg.dim = n;
        cfg.phase = "wave";
        const Report rep = run_experiment(cfg);
        detail += "n=" + std::to_string(n) +
                  " worst slope " + detail::fmt_double(rep.measured.at("worst_slope")) +
                  " (target <= " + detail::fmt_double(-(n + 0.5)) + ") r2 " +
                  detail::fmt_double(rep.measured.at("worst_r2")) + "; ";
        ok = ok && rep.pass;
    }
    return ok;
}

// 5. Fourier coefficient decay for a 3-derivative amplitude
inline bool criterion_coefficient_decay(std::string& detail) {
    ExperimentConfig cfg;
    cfg.experiment = "coefficient-decay";
    cfg.k_max = 16;
    const Report rep = run_experiment(cfg);
    detail = "fitted slope " + detail::fmt_double(rep.measured.at("slope")) + " (target <= -2.5)";
    return rep.pass;
}

// 6. dyadic piece decay within a factor 2 of 2^{jm}, m in {-1/2, -1}
inline bool criterion_dyadic_decay(std::string& detail) {
    bool ok = true;
    for (double m : {-0.5, -1.0}) {
        ExperimentConfig cfg;
        cfg.experiment = "dyadic-decay";
        cfg.dim = 1;
        cfg.half_extent = 16.0;
        cfg.points_per_axis = 2048;  // shells up to j = 6 stay resolved and decayed
        cfg.amplitude.name = "hormander";
        cfg.amplitude.m = m;
        cfg.phase = "wave";
        cfg.level_min = 3;
        cfg.level_max = 6;
        cfg.trials = 8;
        cfg.seed = 7;
        const Report rep = run_experiment(cfg);
        detail += "m=" + detail::fmt_double(m) + " slope " +
                  detail::fmt_double(rep.measured.at("slope")) + "; ";
        ok = ok && rep.pass;
    }
    return ok;
}

// 7 & 8. bilinear iteration consistency and seminorm transfer
inline bool criterion_bilinear(std::string& detail, bool product_amplitude) {
    ExperimentConfig cfg;
    cfg.experiment = "bilinear-consistency";
    cfg.dim = 1;
    cfg.half_extent = 16.0;
    cfg.points_per_axis = 128;
    cfg.trials = 5;
    cfg.seed = 11;
    cfg.phase = cfg.phase2 = "wave";
    if (product_amplitude) {
        SymbolSpec prod;
        prod.name = "product";
        SymbolSpec factor;
        factor.name = "hormander";
        factor.m = -1.0;
        prod.factors = {factor, factor};
        cfg.amplitude = prod;
    } else {
        cfg.amplitude.name = "hormander";  // joint order -1 fallback
        cfg.amplitude.m = -1.0;
    }
    const Report rep = run_experiment(cfg);
    detail = "max rel error " + detail::fmt_double(rep.measured.at("max_rel_error")) +
             ", seminorm spread " + detail::fmt_double(rep.measured.at("seminorm_ratio_spread"));
    if (product_amplitude) return rep.measured.at("seminorm_ratio_spread") <= 3.0;
    return rep.measured.at("max_rel_error") <= 1e-6;
}

// 9. separated multilinear convergence
inline bool criterion_separated(std::string& detail) {
    ExperimentConfig cfg;
    cfg.experiment = "separated-multilinear";
    cfg.dim = 1;
    cfg.half_extent = 16.0;
    cfg.points_per_axis = 128;
    cfg.amplitude.name = "hormander";  // joint order -2 fallback
    cfg.amplitude.m = -2.0;
    cfg.phase = cfg.phase2 = "wave";
    cfg.k_trunc = {4, 8, 16};
    cfg.seed = 23;
    const Report rep = run_experiment(cfg);
    detail = "final rel error " + detail::fmt_double(rep.measured.at("final_rel_error"));
    return rep.pass;
}

// 10. decomposition invariants
inline bool criterion_decomposition(std::string& detail) {
    bool ok = true;
    // LP partition at 1e-12 on the resolved band
    {
        const GridSpec g = make_grid(1, 16.0, 1024);
        const auto lp = LittlewoodPaley::build(g);
        const double band = 0.9 * g.nyquist();
        for (std::size_t i = 0; i < g.total_points(); ++i) {
            if (norm2(g.frequency(i), 1) > band) continue;
            if (std::abs(lp.partial_sum(i, lp.j_max()) - 1.0) > 1e-12) ok = false;
        }
    }
    // cone partition sums, spacing, covering for j = 2..8 on n = 2
    {
        const GridSpec g = make_grid(2, 8.0, 64);
        for (int j = 2; j <= 8; ++j) {
            const auto dirs = cone_directions(j, 2);
            const double u = std::pow(2.0, -0.5 * j);
            double min_dist = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < dirs.size(); ++a)
                for (std::size_t b = a + 1; b < dirs.size(); ++b)
                    min_dist = std::min(min_dist, norm2(minus(dirs[a], dirs[b]), 2));
            if (min_dist < u) ok = false;

            const ConeCover cover = ConeCover::build(j, g);
            if (cover.covering_radius() > u) ok = false;
            for (double th = 0.05; th < 2.0 * pi; th += 0.21) {
                const Vec xi{std::ldexp(1.0, j) * std::cos(th),
                             std::ldexp(1.0, j) * std::sin(th)};
                double s = 0.0;
                for (int nu = 0; nu < cover.count(); ++nu) s += cover.chi(nu, xi);
                if (std::abs(s - 1.0) > 1e-12) ok = false;
            }
        }
    }
    // Phi-estimate scaling brackets for the wave phase
    {
        const GridSpec g = make_grid(2, 8.0, 256);
        const auto lp = LittlewoodPaley::build(g);
        const Amplitude a = amplitude_hormander(0.0);
        const auto p2 = sss_localize(a, phase_wave(), 2, 0, ConeCover::build(2, g), lp);
        const auto p4 = sss_localize(a, phase_wave(), 4, 0, ConeCover::build(4, g), lp);
        const double par = p2.phi_check.sup_d1_parallel / p4.phi_check.sup_d1_parallel;
        const double perp = p2.phi_check.sup_d1_perp / p4.phi_check.sup_d1_perp;
        if (!(par >= 2.5 && par <= 5.5)) ok = false;
        if (!(perp >= 1.5 && perp <= 2.8)) ok = false;
        if (!p2.phi_check.pass || !p4.phi_check.pass) ok = false;
        detail = "Phi scaling factors par " + detail::fmt_double(par) + ", perp " +
                 detail::fmt_double(perp);
    }
    return ok;
}

}  // namespace selftest_detail

inline std::vector<CriterionResult> run_acceptance_suite() {
    namespace sd = selftest_detail;
    std::vector<CriterionResult> results;
    results.push_back(sd::timed(1, "threshold identities (exact)", sd::criterion_thresholds));
    results.push_back(sd::timed(2, "band-limited identity <= 1e-9", sd::criterion_identity));
    results.push_back(sd::timed(3, "wave-phase translation <= 1e-6", sd::criterion_translation));
    results.push_back(
        sd::timed(4, "low-frequency kernel decay slope", sd::criterion_kernel_decay));
    results.push_back(
        sd::timed(5, "Fourier coefficient decay slope <= -2.5", sd::criterion_coefficient_decay));
    results.push_back(
        sd::timed(6, "dyadic piece norms within 2x of 2^{jm}", sd::criterion_dyadic_decay));
    results.push_back(sd::timed(7, "bilinear iteration consistency <= 1e-6",
                                [](std::string& d) { return sd::criterion_bilinear(d, false); }));
    results.push_back(sd::timed(8, "seminorm transfer stable within 3x",
                                [](std::string& d) { return sd::criterion_bilinear(d, true); }));
    results.push_back(
        sd::timed(9, "separated multilinear convergence", sd::criterion_separated));
    results.push_back(
        sd::timed(10, "decomposition invariants", sd::criterion_decomposition));
    return results;
}

}  // namespace fiolab
