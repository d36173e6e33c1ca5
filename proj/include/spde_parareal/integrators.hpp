#pragma once

#include "spde_parareal/noise.hpp"
#include "spde_parareal/spectral.hpp"
#include "spde_parareal/time_grid.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace spde_parareal {

/// Linear operator applied by the coarse scheme: e^{dT A} or (I - dT A)^{-1}.
enum class CoarseKind { ExponentialEuler, LinearImplicitEuler };

/// Coarse one-step scheme G_n and fine J-step exponential Euler scheme F_n for
///   du = (A u + F(u)) dt + dW^Q
/// on a fixed space/grid pair. Per-mode decay factors are computed once at
/// construction; all methods are const and may be called concurrently.
class Propagator {
public:
    Propagator(SpectralSpace space, TimeGrid grid, CoarseKind kind, Nonlinearity nonlinearity);

    const SpectralSpace& space() const noexcept { return space_; }
    const TimeGrid& grid() const noexcept { return grid_; }
    CoarseKind kind() const noexcept { return kind_; }
    const Nonlinearity& nonlinearity() const noexcept { return nonlinearity_; }

    /// G_n(u) = S( u + dT F(u) + dW_n ), S the coarse operator.
    SpectralField coarse_step(const SpectralField& u, std::size_t n, const NoisePath& path) const;

    /// One exponential Euler sub-step on fine row l: e^{dt A}( v + dt F(v) + dW_l ).
    SpectralField fine_aux_step(const SpectralField& v, std::size_t l, const NoisePath& path) const;

    /// F_n(u): J fine sub-steps over rows nJ .. nJ+J-1.
    SpectralField fine_propagate(const SpectralField& u, std::size_t n, const NoisePath& path) const;

    /// R_n(u) = F_n(u) - G_n(u).
    SpectralField residual(const SpectralField& u, std::size_t n, const NoisePath& path) const;

    /// u_0 = u0, u_{n+1} = F_n(u_n) for n = 0..N-1.
    std::vector<SpectralField> reference_trajectory(const SpectralField& u0, const NoisePath& path) const;

    std::span<const double> fine_decay() const noexcept { return fine_decay_; }
    std::span<const double> coarse_factor() const noexcept { return coarse_factor_; }

private:
    void check(const SpectralField& u, const NoisePath& path) const;
    SpectralField drift(const SpectralField& u) const;

    SpectralSpace space_;
    TimeGrid grid_;
    CoarseKind kind_;
    Nonlinearity nonlinearity_;
    std::vector<double> fine_decay_;     // e^{-lambda_p dt}
    std::vector<double> coarse_factor_;  // e^{-lambda_p dT} or 1/(1 + lambda_p dT)
};

}  // namespace spde_parareal
