// spde-parareal: run convergence studies of the parareal SPDE integrator and
// print theoretical rates.
//
//   spde-parareal run --config study.cfg [--out results/] [--threads 4]
//   spde-parareal predict --coarse expo --alpha-bar 0.25 --k 2

#include "spde_parareal/errors.hpp"
#include "spde_parareal/experiments.hpp"
#include "spde_parareal/run_config.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace {

constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

// --threads, then SPDE_PARAREAL_THREADS, then the config file.
unsigned resolve_threads(std::optional<unsigned> flag, unsigned from_config) {
    if (flag) return *flag;
    if (const char* env = std::getenv("SPDE_PARAREAL_THREADS"); env != nullptr && *env != '\0') {
        try {
            const unsigned long n = std::stoul(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring invalid SPDE_PARAREAL_THREADS='" << env << "'\n";
        }
    }
    return from_config;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace spde_parareal;

    CLI::App app{"Parareal integrator for semilinear parabolic SPDEs with additive noise"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Monte Carlo convergence study from a key = value config");
    std::string config_path;
    std::string out_dir;
    std::optional<unsigned> threads;
    run_cmd->add_option("--config", config_path, "config file")->required();
    run_cmd->add_option("--out", out_dir, "output directory (overrides out_dir)");
    run_cmd->add_option("--threads", threads, "worker threads (fallback: SPDE_PARAREAL_THREADS)")
        ->check(CLI::PositiveNumber);

    auto* predict_cmd = app.add_subcommand("predict", "theoretical order of convergence in dT");
    std::string coarse = "expo";
    double alpha_bar = 0.25;
    std::size_t k = 0;
    bool improved = false;
    predict_cmd->add_option("--coarse", coarse, "expo | implicit")
        ->check(CLI::IsMember({"expo", "implicit"}));
    predict_cmd->add_option("--alpha-bar", alpha_bar, "noise regularity parameter")->required();
    predict_cmd->add_option("--k", k, "parareal iteration")->required();
    predict_cmd->add_flag("--improved", improved, "improved exponential rate (k >= 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    if (*predict_cmd) {
        try {
            const CoarseKind kind = coarse == "expo" ? CoarseKind::ExponentialEuler : CoarseKind::LinearImplicitEuler;
            const double base = predicted_order(kind, alpha_bar, k, RateRegime::Base);
            std::cout << "coarse=" << coarse << " alpha_bar=" << format_number(alpha_bar) << " k=" << k
                      << " order=" << format_number(base);
            if (kind == CoarseKind::ExponentialEuler && (improved || k >= 2)) {
                std::cout << " improved_order=" << format_number(
                                                       predicted_order(kind, alpha_bar, k, RateRegime::Improved));
            }
            std::cout << '\n';
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitConfigError;
        }
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << config_path << ": " << e.what() << '\n';
        return kExitConfigError;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    cfg.threads = resolve_threads(threads, cfg.threads);

    try {
        const ExperimentOutput out = run_experiment(cfg);
        std::cout << out.report;
        std::cout << "wrote " << (cfg.out_dir / "errors.csv").string() << ", orders.csv, report.txt\n";
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return 0;
}
