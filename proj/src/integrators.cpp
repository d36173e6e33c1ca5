#include "spde_parareal/integrators.hpp"

#include "spde_parareal/errors.hpp"

#include <cmath>
#include <string>

namespace spde_parareal {

Propagator::Propagator(SpectralSpace space, TimeGrid grid, CoarseKind kind, Nonlinearity nonlinearity)
    : space_(std::move(space)), grid_(grid), kind_(kind), nonlinearity_(nonlinearity) {
    const double dt = grid_.fine_step();
    const double dT = grid_.coarse_step();
    const auto lambda = space_.eigenvalues();
    fine_decay_.reserve(lambda.size());
    coarse_factor_.reserve(lambda.size());
    for (double l : lambda) {
        fine_decay_.push_back(std::exp(-l * dt));
        coarse_factor_.push_back(kind_ == CoarseKind::ExponentialEuler ? std::exp(-l * dT)
                                                                       : 1.0 / (1.0 + l * dT));
    }
}

void Propagator::check(const SpectralField& u, const NoisePath& path) const {
    if (u.modes() != space_.modes() || path.modes() != space_.modes()) {
        throw ConfigError("state/noise mode count does not match the spectral space (" +
                          std::to_string(space_.modes()) + " modes)");
    }
    if (path.fine_steps() != grid_.fine_steps()) {
        throw ConfigError("noise lattice has " + std::to_string(path.fine_steps()) +
                          " rows, grid has " + std::to_string(grid_.fine_steps()));
    }
}

SpectralField Propagator::drift(const SpectralField& u) const {
    return space_.apply_nonlinearity(u, nonlinearity_);
}

SpectralField Propagator::coarse_step(const SpectralField& u, std::size_t n, const NoisePath& path) const {
    check(u, path);
    const double dT = grid_.coarse_step();
    const SpectralField f = drift(u);
    SpectralField out = coarse_increment(path, n, grid_);
    for (std::size_t p = 0; p < out.modes(); ++p) {
        out[p] = coarse_factor_[p] * ((u[p] + dT * f[p]) + out[p]);
    }
    return out;
}

SpectralField Propagator::fine_aux_step(const SpectralField& v, std::size_t l, const NoisePath& path) const {
    check(v, path);
    const double dt = grid_.fine_step();
    const SpectralField f = drift(v);
    const auto dW = path.fine_increment(l);
    SpectralField out(v.modes());
    for (std::size_t p = 0; p < out.modes(); ++p) {
        out[p] = fine_decay_[p] * ((v[p] + dt * f[p]) + dW[p]);
    }
    return out;
}

SpectralField Propagator::fine_propagate(const SpectralField& u, std::size_t n, const NoisePath& path) const {
    if (n >= grid_.coarse_intervals()) {
        throw DomainError("coarse interval " + std::to_string(n) + " >= N");
    }
    const std::size_t J = grid_.fine_per_coarse();
    SpectralField v = u;
    for (std::size_t j = 0; j < J; ++j) {
        v = fine_aux_step(v, n * J + j, path);
    }
    return v;
}

SpectralField Propagator::residual(const SpectralField& u, std::size_t n, const NoisePath& path) const {
    return fine_propagate(u, n, path) - coarse_step(u, n, path);
}

std::vector<SpectralField> Propagator::reference_trajectory(const SpectralField& u0,
                                                            const NoisePath& path) const {
    check(u0, path);
    std::vector<SpectralField> traj;
    traj.reserve(grid_.coarse_intervals() + 1);
    traj.push_back(u0);
    for (std::size_t n = 0; n < grid_.coarse_intervals(); ++n) {
        traj.push_back(fine_propagate(traj.back(), n, path));
    }
    return traj;
}

}  // namespace spde_parareal
