#include <catch2/catch_amalgamated.hpp>

#include "fiolab/lab/selftest.hpp"

using namespace fiolab;

TEST_CASE("fit_decay_exponent on synthetic sequences") {
    std::vector<std::pair<double, double>> pts;
    for (int j = 1; j <= 8; ++j) pts.emplace_back(j, std::pow(2.0, -j));
    const auto fit = fit_decay_exponent(pts);
    CHECK(fit.slope == Catch::Approx(-1.0).margin(1e-12));
    CHECK(fit.r_squared == Catch::Approx(1.0).margin(1e-12));

    pts.clear();
    for (int j = 1; j <= 6; ++j) pts.emplace_back(j, 3.7);
    CHECK(fit_decay_exponent(pts).slope == Catch::Approx(0.0).margin(1e-12));

    // 1% multiplicative noise around 2^{-j/2}
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    pts.clear();
    for (int j = 1; j <= 10; ++j)
        pts.emplace_back(j, std::pow(2.0, -0.5 * j) * (1.0 + noise(rng)));
    const auto noisy = fit_decay_exponent(pts);
    CHECK(noisy.slope >= -0.55);
    CHECK(noisy.slope <= -0.45);

    pts.resize(3);
    CHECK_THROWS_AS(fit_decay_exponent(pts), std::invalid_argument);
    pts = {{1, 1.0}, {2, 0.5}, {3, -0.1}, {4, 0.1}};
    CHECK_THROWS_AS(fit_decay_exponent(pts), std::invalid_argument);
}

TEST_CASE("estimate_operator_norm basics") {
    const GridSpec g = make_grid(1, 16.0, 128);
    auto probe = [&](std::uint64_t s) {
        return random_test_function(g, ProbeFamily::band_limited_noise, s);
    };

    const auto ident = estimate_operator_norm([](const Field& u) { return u; }, 2.0, 2.0, 8, 1,
                                              probe, "noise");
    CHECK(ident.lower_bound == Catch::Approx(1.0).margin(1e-10));
    CHECK(ident.witness.find("noise") == 0);

    const auto zero = estimate_operator_norm(
        [&](const Field&) { return Field::zeros(g); }, 2.0, 2.0, 8, 1, probe);
    CHECK(zero.lower_bound == 0.0);

    // <xi>^{-1} multiplier: bounded by 1, and at least the value at the
    // smallest active frequency of the probe band
    Amplitude mult = amplitude_hormander(-1.0);
    LinearFio op{mult, phase_linear(), g, false};
    const auto est = estimate_operator_norm(
        [&](const Field& u) { return apply_linear(op, u); }, 2.0, 2.0, 8, 5, probe);
    CHECK(est.lower_bound <= 1.0 + 1e-10);
    CHECK(est.lower_bound >= std::pow(1.0 + std::pow(0.4 * g.nyquist(), 2.0), -0.5));

    CHECK_THROWS_AS(estimate_operator_norm([](const Field& u) { return u; }, 2.0, 2.0, 4, 1,
                                           probe),
                    std::invalid_argument);
}

TEST_CASE("config parsing validates names and exponents") {
    nlohmann::json j = {{"experiment", "dyadic-decay"},
                        {"grid", {{"dim", 1}, {"half_extent", 8.0}, {"points_per_axis", 256}}},
                        {"amplitude", {{"name", "hormander"}, {"m", -1.0}}},
                        {"phase", "wave"},
                        {"seed", 3}};
    const auto cfg = ExperimentConfig::from_json(j);
    CHECK(cfg.experiment == "dyadic-decay");
    CHECK(cfg.seed == 3);

    nlohmann::json bad_exp = j;
    bad_exp["experiment"] = "no-such-experiment";
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_exp), ConfigError);

    nlohmann::json bad_amp = j;
    bad_amp["amplitude"] = {{"name", "not-in-catalog"}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_amp), ConfigError);

    nlohmann::json bad_q = j;
    bad_q["exponents"] = {{"q", "1/2"}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_q), ConfigError);

    nlohmann::json bad_grid = j;
    bad_grid["grid"]["points_per_axis"] = 100;
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_grid), ConfigError);
}

TEST_CASE("threshold-table experiment cross-checks rational and float APIs") {
    ExperimentConfig cfg;
    cfg.experiment = "threshold-table";
    cfg.dim = 2;
    const Report rep = run_experiment(cfg);
    CHECK(rep.pass);
    CHECK(rep.measured.at("entries") == 75.0);
    CHECK(rep.thresholds.at("m_arc(1,inf,2)") == "0 [branch 2]");
}

TEST_CASE("coefficient-decay experiment passes its rule") {
    ExperimentConfig cfg;
    cfg.experiment = "coefficient-decay";
    const Report rep = run_experiment(cfg);
    CHECK(rep.pass);
    CHECK(rep.measured.at("slope") <= -2.5);
    CHECK(rep.status == "ok");
}

TEST_CASE("experiments are deterministic: same config gives bit-identical CSV") {
    ExperimentConfig cfg;
    cfg.experiment = "bilinear-consistency";
    cfg.dim = 1;
    cfg.half_extent = 16.0;
    cfg.points_per_axis = 64;
    cfg.trials = 2;
    cfg.seed = 9;
    cfg.amplitude.name = "hormander";
    cfg.amplitude.m = -1.0;
    const Report a = run_experiment(cfg);
    const Report b = run_experiment(cfg);
    CHECK(a.csv() == b.csv());
    CHECK(!a.rows.empty());
}

TEST_CASE("experiment errors are captured in the report, not thrown") {
    ExperimentConfig cfg;
    cfg.experiment = "bilinear-consistency";
    cfg.dim = 1;
    cfg.half_extent = 16.0;
    cfg.points_per_axis = 128;
    cfg.trials = 1;
    cfg.budget = 10.0;  // absurdly small: the direct quadrature must refuse
    const Report rep = run_experiment(cfg);
    CHECK_FALSE(rep.pass);
    CHECK(rep.status.find("error") == 0);
    CHECK(rep.status.find("work budget") != std::string::npos);
}

TEST_CASE("dyadic-decay experiment tracks the symbol order") {
    ExperimentConfig cfg;
    cfg.experiment = "dyadic-decay";
    cfg.dim = 1;
    cfg.half_extent = 16.0;
    cfg.points_per_axis = 2048;
    cfg.amplitude.name = "hormander";
    cfg.amplitude.m = -1.0;
    cfg.phase = "wave";
    cfg.level_min = 3;
    cfg.level_max = 6;
    cfg.trials = 8;
    cfg.seed = 1;
    const Report rep = run_experiment(cfg);
    CHECK(rep.status == "ok");
    CHECK(rep.pass);
    CHECK(rep.measured.at("slope") <= -0.9);
    CHECK(rep.thresholds.at("m_arc") == "0");
}

TEST_CASE("csv output carries the fixed versioned header") {
    ExperimentConfig cfg;
    cfg.experiment = "threshold-table";
    const Report rep = run_experiment(cfg);
    const std::string csv = rep.csv();
    CHECK(csv.rfind("# fio-lab csv v1\nexperiment,series,idx,x,y,note\n", 0) == 0);
    const auto js = rep.summary();
    CHECK(js.contains("config"));
    CHECK(js["config"]["grid"]["points_per_axis"].is_number());
    CHECK(js.contains("wall_seconds"));
}
