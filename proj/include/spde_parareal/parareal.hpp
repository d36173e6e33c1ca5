#pragma once

#include "spde_parareal/integrators.hpp"

#include <cstddef>
#include <vector>

namespace spde_parareal {

using Trajectory = std::vector<SpectralField>;

struct PararealConfig {
    SpectralSpace space;
    TimeGrid grid;
    CoarseKind kind = CoarseKind::ExponentialEuler;
    Nonlinearity nonlinearity;
    std::size_t iterations = 1;  // K
    SpectralField u0;
    unsigned concurrency = 1;    // worker hint for the fine sweeps

    Propagator propagator() const { return Propagator(space, grid, kind, nonlinearity); }
};

/// Result of K parareal iterations together with the fine reference solution.
struct PararealRun {
    std::vector<Trajectory> trajectories;  // [k][n], k = 0..K
    Trajectory reference;                  // [n]
    std::vector<Trajectory> errors;        // [k][n] = trajectories[k][n] - reference[n]
};

/// One parareal sweep. Holds the coarse values G_n(u_n^{(k)}) of the current
/// iterate so the next correction does not recompute them; the values are
/// bitwise the ones a fresh coarse_step would return.
struct PararealState {
    Trajectory values;       // u_n^{(k)}, n = 0..N
    Trajectory coarse_next;  // G_n(u_n^{(k)}), n = 0..N-1
};

/// Coarse sweep u_{n+1}^{(0)} = G_n(u_n^{(0)}).
PararealState initialize_state(const Propagator& prop, const SpectralField& u0, const NoisePath& path);

/// Predictor-corrector update
///   u_{n+1}^{(k+1)} = (G_n(u_n^{(k+1)}) - G_n(u_n^{(k)})) + F_n(u_n^{(k)}).
/// The N fine propagations run on up to `concurrency` workers; the corrector
/// sweep is sequential. Output does not depend on `concurrency`.
PararealState iterate_state(const Propagator& prop, const PararealState& prev, const NoisePath& path,
                            unsigned concurrency);

Trajectory initialize(const PararealConfig& cfg, const NoisePath& path);
Trajectory iterate(const Trajectory& prev, const PararealConfig& cfg, const NoisePath& path);
PararealRun run(const PararealConfig& cfg, const NoisePath& path);

}  // namespace spde_parareal
