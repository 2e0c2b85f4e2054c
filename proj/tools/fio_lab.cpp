// fio-lab: threshold arithmetic, experiment runner, catalog listing, and
// the acceptance selftest, from the command line.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "fiolab/lab/selftest.hpp"

namespace {

using namespace fiolab;

int cmd_thresholds(const std::string& rho_s, const std::string& p_s, const std::string& q_s,
                   const std::string& q2_s, int n) {
    const ExtReal rho = ExtReal::parse(rho_s);
    const ExtReal p = ExtReal::parse(p_s);
    const ExtReal q = ExtReal::parse(q_s);

    const auto arc = m_arc_full(rho, p, q, n);
    std::cout << "m_arc(" << rho.str() << ", " << p.str() << ", " << q.str() << "; n=" << n
              << ") = " << arc.value.str() << " = " << arc.value.to_double() << "  [branch "
              << arc.branch << "]\n";
    const ExtReal thma = theorem_a_order(rho, p, q, n);
    std::cout << "high-frequency order threshold      = " << thma.str() << " = "
              << thma.to_double() << "\n";
    const ExtReal psd = pseudodifferential_order(rho, p, q, n);
    std::cout << "pseudodifferential order threshold  = " << psd.str() << " = " << psd.to_double()
              << "\n";
    if (ExtReal(1) < q && q < ExtReal(2)) {
        const ExtReal ms = m_script(rho, p, q, n);
        std::cout << "Lorentz companion m_script          = " << ms.str() << " = "
                  << ms.to_double() << "\n";
    }
    if (!q2_s.empty()) {
        const ExtReal q2 = ExtReal::parse(q2_s);
        const auto adm = bilinear_admissible(ExtReal(-1), ExtReal(-1), rho, rho, p, q, q2, n);
        std::cout << "bilinear: r = " << adm.r.str() << ", r2 = " << adm.r2.str()
                  << ", m1 < " << adm.threshold1.str() << ", m2 < " << adm.threshold2.str()
                  << (adm.ok ? "  (orders (-1,-1) admissible)" : "  (orders (-1,-1) not admissible)")
                  << "\n";
        std::vector<ExtReal> qs{q, q2};
        std::cout << "multilinear order threshold         = " << theorem_d_order(qs, n).str()
                  << "\n";
    }
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_override,
            std::int64_t seed_override, double budget_override) {
    nlohmann::json j;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config '" << config_path << "'\n";
            return 2;
        }
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return 2;
        }
    }
    ExperimentConfig cfg;
    try {
        cfg = ExperimentConfig::from_json(j);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (!out_override.empty()) cfg.out = out_override;
    if (cfg.out.empty()) cfg.out = ".";
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (budget_override > 0) cfg.budget = budget_override;
    std::filesystem::create_directories(cfg.out);

    const Report rep = run_experiment(cfg);
    std::cout << cfg.experiment << ": " << (rep.pass ? "PASS" : "FAIL") << " (" << rep.status
              << ", " << rep.wall_seconds << " s)\n";
    for (const auto& [k, v] : rep.measured) std::cout << "  " << k << " = " << v << "\n";
    for (const auto& [k, v] : rep.thresholds) std::cout << "  " << k << " = " << v << "\n";
    std::cout << "  wrote " << cfg.out << "/" << cfg.experiment << ".csv and _summary.json\n";
    return rep.pass ? 0 : 1;
}

int cmd_catalog() {
    for (const auto& e : catalog_listing())
        std::cout << e.name << "  [" << e.kind << "]  " << e.summary << "\n";
    return 0;
}

int cmd_selftest() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = run_acceptance_suite();
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name
                  << "  (" << r.detail << ", " << r.seconds << " s)\n";
        all = all && r.pass;
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (all ? "selftest passed" : "selftest FAILED") << " in " << total << " s\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fio-lab: a numerical laboratory for rough Fourier integral operators"};
    app.require_subcommand(1);

    std::string rho = "1", p = "inf", q = "2", q2;
    int n = 2;
    auto* th = app.add_subcommand("thresholds", "print admissible-order thresholds exactly");
    th->add_option("--rho", rho, "rho in [0,1], e.g. 1 or 1/2");
    th->add_option("--p", p, "Lebesgue exponent p (rational or inf)");
    th->add_option("--q", q, "Lebesgue exponent q");
    th->add_option("--q2", q2, "second exponent for the bilinear thresholds");
    th->add_option("--n", n, "dimension");

    std::string config_path, out;
    std::int64_t seed = -1;
    double budget = 0.0;
    auto* run = app.add_subcommand("run", "run an experiment described by a JSON config");
    run->add_option("config,--config", config_path, "config file");
    run->add_option("--out", out, "output directory for CSV and summary");
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--budget", budget, "override the work budget");

    auto* cat = app.add_subcommand("catalog", "list builtin amplitudes and phases");
    auto* self = app.add_subcommand("selftest", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (th->parsed()) return cmd_thresholds(rho, p, q, q2, n);
        if (run->parsed()) {
            if (config_path.empty()) {
                std::cerr << "run: missing config file\n";
                return 2;
            }
            return cmd_run(config_path, out, seed, budget);
        }
        if (cat->parsed()) return cmd_catalog();
        if (self->parsed()) return cmd_selftest();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
