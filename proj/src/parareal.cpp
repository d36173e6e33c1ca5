#include "spde_parareal/parareal.hpp"

#include "spde_parareal/errors.hpp"

#include <string>

namespace spde_parareal {

namespace {

void check_trajectory(const Trajectory& traj, const TimeGrid& grid) {
    if (traj.size() != grid.coarse_intervals() + 1) {
        throw ConfigError("trajectory has " + std::to_string(traj.size()) + " nodes, expected N+1 = " +
                          std::to_string(grid.coarse_intervals() + 1));
    }
}

}  // namespace

PararealState initialize_state(const Propagator& prop, const SpectralField& u0, const NoisePath& path) {
    const std::size_t N = prop.grid().coarse_intervals();
    PararealState state;
    state.values.reserve(N + 1);
    state.coarse_next.reserve(N);
    state.values.push_back(u0);
    for (std::size_t n = 0; n < N; ++n) {
        state.coarse_next.push_back(prop.coarse_step(state.values[n], n, path));
        state.values.push_back(state.coarse_next.back());
    }
    return state;
}

PararealState iterate_state(const Propagator& prop, const PararealState& prev, const NoisePath& path,
                            unsigned concurrency) {
    const std::size_t N = prop.grid().coarse_intervals();
    check_trajectory(prev.values, prop.grid());
    if (prev.coarse_next.size() != N) {
        throw ConfigError("coarse cache does not cover N intervals");
    }

    Trajectory fine(N);
    const long count = static_cast<long>(N);
    const int workers = concurrency < 1 ? 1 : static_cast<int>(concurrency);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1) if (workers > 1)
    for (long n = 0; n < count; ++n) {
        const auto i = static_cast<std::size_t>(n);
        fine[i] = prop.fine_propagate(prev.values[i], i, path);
    }

    PararealState next;
    next.values.reserve(N + 1);
    next.coarse_next.reserve(N);
    next.values.push_back(prev.values.front());
    for (std::size_t n = 0; n < N; ++n) {
        next.coarse_next.push_back(prop.coarse_step(next.values[n], n, path));
        // Difference first: identical inputs give an exact zero, so nodes that
        // already agree with the fine solution stay bitwise equal to it.
        SpectralField value = next.coarse_next[n] - prev.coarse_next[n];
        value += fine[n];
        next.values.push_back(std::move(value));
    }
    return next;
}

Trajectory initialize(const PararealConfig& cfg, const NoisePath& path) {
    return initialize_state(cfg.propagator(), cfg.u0, path).values;
}

Trajectory iterate(const Trajectory& prev, const PararealConfig& cfg, const NoisePath& path) {
    const Propagator prop = cfg.propagator();
    check_trajectory(prev, cfg.grid);
    PararealState state{prev, {}};
    state.coarse_next.reserve(cfg.grid.coarse_intervals());
    for (std::size_t n = 0; n < cfg.grid.coarse_intervals(); ++n) {
        state.coarse_next.push_back(prop.coarse_step(prev[n], n, path));
    }
    return iterate_state(prop, state, path, cfg.concurrency).values;
}

PararealRun run(const PararealConfig& cfg, const NoisePath& path) {
    const Propagator prop = cfg.propagator();
    PararealRun out;
    out.trajectories.reserve(cfg.iterations + 1);

    PararealState state = initialize_state(prop, cfg.u0, path);
    out.trajectories.push_back(state.values);
    for (std::size_t k = 0; k < cfg.iterations; ++k) {
        state = iterate_state(prop, state, path, cfg.concurrency);
        out.trajectories.push_back(state.values);
    }

    out.reference = prop.reference_trajectory(cfg.u0, path);
    out.errors.reserve(out.trajectories.size());
    for (const Trajectory& traj : out.trajectories) {
        Trajectory err;
        err.reserve(traj.size());
        for (std::size_t n = 0; n < traj.size(); ++n) err.push_back(traj[n] - out.reference[n]);
        out.errors.push_back(std::move(err));
    }
    return out;
}

}  // namespace spde_parareal
