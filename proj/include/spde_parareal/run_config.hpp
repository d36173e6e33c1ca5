#pragma once

#include "spde_parareal/experiments.hpp"
#include "spde_parareal/integrators.hpp"
#include "spde_parareal/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spde_parareal {

/// Flat key = value experiment description. Defaults reproduce the
/// linear-implicit white-noise study: P = 100, G = 201, T = 1, dt = 2^-13 T,
/// J in {16, ..., 512}, M = 100.
struct RunConfig {
    double alpha_bar = 0.25;
    std::size_t modes = 100;
    std::size_t grid_points = 201;
    double final_time = 1.0;
    int dt_exponent = 13;
    std::vector<std::size_t> J_list{16, 32, 64, 128, 256, 512};
    std::size_t K = 3;
    CoarseKind coarse = CoarseKind::LinearImplicitEuler;
    Nonlinearity nonlinearity;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::filesystem::path out_dir = ".";

    std::size_t fine_steps() const noexcept { return std::size_t{1} << dt_exponent; }
    ExperimentSetup setup() const;
};

/// Parses `key = value` lines; '#' starts a comment. Missing keys keep their
/// defaults; if `modes` is set without `grid_points`, G = 2P + 1. Unknown keys,
/// malformed values and violated invariants throw ConfigError whose message
/// starts with "line <n>:".
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

std::string to_string(CoarseKind kind);
std::string to_string(const Nonlinearity& f);

/// Outcome of one experiment, already rendered into the three output files.
struct ExperimentOutput {
    ErrorTable table;
    std::string errors_csv;
    std::string orders_csv;
    std::string report;
    bool all_checks_passed = true;
};

/// Runs the Monte Carlo study and renders its outputs; no I/O.
ExperimentOutput compute_experiment(const RunConfig& cfg);

std::string format_errors_csv(const ErrorTable& table);
std::string format_orders_csv(const ErrorTable& table, const RunConfig& cfg);

/// compute_experiment plus writing errors.csv, orders.csv and report.txt into
/// cfg.out_dir (created if needed). Throws std::runtime_error on I/O failure.
ExperimentOutput run_experiment(const RunConfig& cfg);

/// Formats with 17 significant digits and '.' as decimal separator.
std::string format_number(double x);

}  // namespace spde_parareal
