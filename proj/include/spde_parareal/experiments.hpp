#pragma once

#include "spde_parareal/integrators.hpp"
#include "spde_parareal/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spde_parareal {

/// Everything a Monte Carlo error study needs apart from the (J, K, M) sweep.
/// The fine step dt = final_time / fine_steps is shared by every J.
struct ExperimentSetup {
    SpectralSpace space;
    double final_time = 1.0;
    std::size_t fine_steps = 8192;  // N J, fixed across the J sweep
    CoarseKind kind = CoarseKind::LinearImplicitEuler;
    Nonlinearity nonlinearity;
    SpectralField u0;  // empty means u0 = 0
    double alpha_bar = 0.25;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// Root-mean-square errors (over Monte Carlo samples) of one (k, J) pair.
struct ErrorRow {
    std::size_t k = 0;
    std::size_t J = 0;
    double coarse_step = 0.0;      // dT = J dt
    double rms_sup_error = 0.0;    // sup_n (E|eps_n^{(k)}|^2)^{1/2}
    double rms_final_error = 0.0;  // (E|eps_N^{(k)}|^2)^{1/2}
    double stderr_sup = 0.0;       // standard error of rms_sup_error (delta method)
};

struct ErrorTable {
    std::vector<ErrorRow> rows;  // ordered by k, then by J as given
    std::size_t samples = 0;
    double reference_rms_sup = 0.0;  // sup_n (E|u_n^ref|^2)^{1/2} over the finest node set

    /// Throws std::out_of_range when the pair is absent.
    const ErrorRow& at(std::size_t k, std::size_t J) const;
    std::vector<ErrorRow> rows_for(std::size_t k) const;
};

/// Runs M independent samples (sample_index 0..M-1). Every (k, J) pair of a
/// sample is driven by the same fine noise lattice and compared with the same
/// fine reference solution. Throws ConfigError when some J does not divide
/// setup.fine_steps.
ErrorTable monte_carlo_errors(const ExperimentSetup& setup, std::span<const std::size_t> J_list,
                              std::size_t K, std::size_t M);

/// Least-squares slope of log(rms_sup_error) against log(dT) over the rows of
/// iteration k. Throws FitError with fewer than three distinct positive points.
double fit_order(const ErrorTable& table, std::size_t k);

/// Slope of log(error) against log(step) for raw points; same error rules.
double fit_loglog_slope(std::span<const double> steps, std::span<const double> errors);

enum class RateRegime { Base, Improved };

/// Convergence order in dT predicted by the error theorems (kappa = 0):
///   implicit coarse        min(alpha_bar, k+1)
///   exponential, Base      (k+1) min(alpha_bar, 1/2)
///   exponential, Improved  (k-1) min(2 alpha_bar, 1/2) + 2 min(alpha_bar, 1/2), k >= 2
/// The implicit prediction ignores the regime. Throws DomainError for the
/// improved regime with k < 2.
double predicted_order(CoarseKind kind, double alpha_bar, std::size_t k, RateRegime regime = RateRegime::Base);

/// Timing model of a parareal run versus the sequential fine solver.
struct CostModel {
    double tau_coarse = 1.0;    // seconds per coarse step
    double tau_fine_aux = 1.0;  // seconds per fine sub-step
    double processors = 1.0;
    double iterations = 1.0;    // K
    double final_time = 1.0;
    double coarse_step = 1.0;   // dT
    double fine_step = 1.0;     // dt
};

/// (K+1)(T/dT) tau_G + K (T/dt) tau_F,aux / N_proc
double cost_parareal(const CostModel& m);
/// (T/dt) tau_F,aux
double cost_ref(const CostModel& m);
/// 1 / ( K/N_proc + (K+1)(dt/dT)(tau_G/tau_F,aux) ) = cost_ref / cost_parareal
double efficiency(const CostModel& m);

}  // namespace spde_parareal
