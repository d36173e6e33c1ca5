#include "spde_parareal/experiments.hpp"

#include "spde_parareal/errors.hpp"
#include "spde_parareal/noise.hpp"
#include "spde_parareal/parareal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spde_parareal {

namespace {

double squared_distance(const SpectralField& a, const SpectralField& b) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.modes(); ++p) {
        const double d = a[p] - b[p];
        s += d * d;
    }
    return s;
}

// Squared error norms of one sample: sq[k][j][n] for J_list[j], plus the
// squared reference norms at every stored fine node.
struct SampleErrors {
    std::vector<std::vector<std::vector<double>>> sq;
    std::vector<double> reference_sq;
};

SampleErrors run_sample(const ExperimentSetup& setup, std::span<const std::size_t> J_list, std::size_t stride,
                        std::size_t K, std::uint64_t sample_index) {
    const SpectralField u0 = setup.u0.modes() == 0 ? SpectralField(setup.space.modes()) : setup.u0;

    const NoiseSpec spec{setup.alpha_bar, setup.space.modes(), setup.seed, sample_index};
    const NoisePath path = sample_path(spec, TimeGrid(setup.final_time, 1, setup.fine_steps));

    // The fine reference at every stride-th fine node. Coarse nodes of each J
    // are a subset, and fine propagation is a composition of identical
    // sub-steps, so this equals the per-J reference trajectory bitwise.
    const Propagator fine_prop(setup.space, TimeGrid(setup.final_time, setup.fine_steps / stride, stride),
                               setup.kind, setup.nonlinearity);
    const Trajectory reference = fine_prop.reference_trajectory(u0, path);

    SampleErrors out;
    out.reference_sq.reserve(reference.size());
    for (const auto& r : reference) out.reference_sq.push_back(squared_distance(r, SpectralField(r.modes())));

    out.sq.assign(K + 1, std::vector<std::vector<double>>(J_list.size()));
    for (std::size_t j = 0; j < J_list.size(); ++j) {
        const std::size_t J = J_list[j];
        const std::size_t N = setup.fine_steps / J;
        const std::size_t ratio = J / stride;
        const Propagator prop(setup.space, TimeGrid(setup.final_time, N, J), setup.kind, setup.nonlinearity);

        PararealState state = initialize_state(prop, u0, path);
        for (std::size_t k = 0; k <= K; ++k) {
            if (k > 0) state = iterate_state(prop, state, path, 1);
            auto& row = out.sq[k][j];
            row.resize(N + 1);
            for (std::size_t n = 0; n <= N; ++n) {
                row[n] = squared_distance(state.values[n], reference[n * ratio]);
            }
        }
    }
    return out;
}

}  // namespace

const ErrorRow& ErrorTable::at(std::size_t k, std::size_t J) const {
    for (const auto& r : rows) {
        if (r.k == k && r.J == J) return r;
    }
    throw std::out_of_range("no error row for k = " + std::to_string(k) + ", J = " + std::to_string(J));
}

std::vector<ErrorRow> ErrorTable::rows_for(std::size_t k) const {
    std::vector<ErrorRow> out;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [k](const ErrorRow& r) { return r.k == k; });
    return out;
}

ErrorTable monte_carlo_errors(const ExperimentSetup& setup, std::span<const std::size_t> J_list, std::size_t K,
                              std::size_t M) {
    if (J_list.empty()) throw ConfigError("J list is empty");
    if (M < 1) throw ConfigError("need at least one Monte Carlo sample");
    if (setup.fine_steps < 1) throw ConfigError("fine step count must be >= 1");
    for (std::size_t J : J_list) {
        if (J < 1 || setup.fine_steps % J != 0) {
            throw ConfigError("J = " + std::to_string(J) + " does not divide the " +
                              std::to_string(setup.fine_steps) + " fine steps");
        }
    }
    if (setup.u0.modes() != 0 && setup.u0.modes() != setup.space.modes()) {
        throw ConfigError("initial condition mode count does not match the spectral space");
    }
    const std::size_t stride =
        std::accumulate(J_list.begin(), J_list.end(), std::size_t{0},
                        [](std::size_t a, std::size_t b) { return std::gcd(a, b); });

    std::vector<SampleErrors> samples(M);
    const long count = static_cast<long>(M);
    const int workers = setup.threads < 1 ? 1 : static_cast<int>(setup.threads);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1) if (workers > 1)
    for (long m = 0; m < count; ++m) {
        samples[static_cast<std::size_t>(m)] =
            run_sample(setup, J_list, stride, K, static_cast<std::uint64_t>(m));
    }

    // Reductions run in sample order so the table does not depend on scheduling.
    const double inv_m = 1.0 / static_cast<double>(M);
    ErrorTable table;
    table.samples = M;
    {
        const std::size_t nodes = samples.front().reference_sq.size();
        double sup = 0.0;
        for (std::size_t n = 0; n < nodes; ++n) {
            double s = 0.0;
            for (const auto& smp : samples) s += smp.reference_sq[n];
            sup = std::max(sup, std::sqrt(s * inv_m));
        }
        table.reference_rms_sup = sup;
    }

    const double dt = setup.final_time / static_cast<double>(setup.fine_steps);
    for (std::size_t k = 0; k <= K; ++k) {
        for (std::size_t j = 0; j < J_list.size(); ++j) {
            const std::size_t nodes = samples.front().sq[k][j].size();
            std::vector<double> mean(nodes, 0.0);
            for (const auto& smp : samples) {
                for (std::size_t n = 0; n < nodes; ++n) mean[n] += smp.sq[k][j][n];
            }
            for (double& v : mean) v *= inv_m;

            const auto argmax = static_cast<std::size_t>(std::max_element(mean.begin(), mean.end()) - mean.begin());
            ErrorRow row;
            row.k = k;
            row.J = J_list[j];
            row.coarse_step = static_cast<double>(J_list[j]) * dt;
            row.rms_sup_error = std::sqrt(mean[argmax]);
            row.rms_final_error = std::sqrt(mean.back());
            if (M > 1 && row.rms_sup_error > 0.0) {
                double var = 0.0;
                for (const auto& smp : samples) {
                    const double d = smp.sq[k][j][argmax] - mean[argmax];
                    var += d * d;
                }
                var /= static_cast<double>(M - 1);
                row.stderr_sup = std::sqrt(var * inv_m) / (2.0 * row.rms_sup_error);
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

double fit_loglog_slope(std::span<const double> steps, std::span<const double> errors) {
    if (steps.size() != errors.size()) throw FitError("step and error counts differ");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i] > 0.0 && errors[i] > 0.0 && std::isfinite(errors[i])) {
            xs.push_back(std::log(steps[i]));
            ys.push_back(std::log(errors[i]));
        }
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) {
        throw FitError("order fit needs at least 3 distinct step sizes with positive error, got " +
                       std::to_string(distinct.size()));
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

double fit_order(const ErrorTable& table, std::size_t k) {
    std::vector<double> steps, errors;
    for (const auto& r : table.rows) {
        if (r.k != k) continue;
        steps.push_back(r.coarse_step);
        errors.push_back(r.rms_sup_error);
    }
    return fit_loglog_slope(steps, errors);
}

double predicted_order(CoarseKind kind, double alpha_bar, std::size_t k, RateRegime regime) {
    if (!(alpha_bar > 0.0)) throw DomainError("alpha_bar must be positive");
    const double kk = static_cast<double>(k);
    if (kind == CoarseKind::LinearImplicitEuler) {
        return std::min(alpha_bar, kk + 1.0);
    }
    const double alpha = std::min(alpha_bar, 0.5);
    if (regime == RateRegime::Base) {
        return (kk + 1.0) * alpha;
    }
    if (k < 2) throw DomainError("improved exponential rate needs k >= 2");
    return (kk - 1.0) * std::min(2.0 * alpha_bar, 0.5) + 2.0 * alpha;
}

double cost_parareal(const CostModel& m) {
    const double coarse_steps = m.final_time / m.coarse_step;
    const double fine_steps = m.final_time / m.fine_step;
    return (m.iterations + 1.0) * coarse_steps * m.tau_coarse +
           m.iterations * fine_steps * m.tau_fine_aux / m.processors;
}

double cost_ref(const CostModel& m) { return m.final_time / m.fine_step * m.tau_fine_aux; }

double efficiency(const CostModel& m) {
    return 1.0 / (m.iterations / m.processors +
                  (m.iterations + 1.0) * (m.fine_step / m.coarse_step) * (m.tau_coarse / m.tau_fine_aux));
}

}  // namespace spde_parareal
