#pragma once

#include "spde_parareal/spectral.hpp"
#include "spde_parareal/time_grid.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spde_parareal {

/// Philox4x32-10 block: a keyed bijection on 128-bit counters.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Standard normal variate attached to one lattice site. Pure function of its
/// arguments; the uniform is mapped through the inverse normal CDF.
double standard_normal(std::uint64_t seed, std::uint64_t sample_index, std::uint64_t step,
                       std::uint64_t mode) noexcept;

/// gamma_p = lambda_p^{1/2 - 2 alpha_bar}, eigenvalues of the noise covariance Q.
double gamma(long p, double alpha_bar);

struct NoiseSpec {
    double alpha_bar = 0.25;
    std::size_t modes = 1;
    std::uint64_t seed = 0;
    std::uint64_t sample_index = 0;

    /// Throws ConfigError/DomainError when alpha_bar <= 0, modes == 0 or some gamma_p is
    /// not finite and positive.
    void validate() const;
};

/// One sample of the truncated Q-Wiener increments on the fine lattice:
/// entry (l, p) = <W(t_{l+1}) - W(t_l), e_p> for l = 0..NJ-1.
class NoisePath {
public:
    NoisePath(std::size_t fine_steps, std::size_t modes, std::vector<double> increments);

    std::size_t fine_steps() const noexcept { return fine_steps_; }
    std::size_t modes() const noexcept { return modes_; }

    /// Row l of the lattice.
    std::span<const double> fine_increment(std::size_t l) const;

    /// Sum of the J fine increments of coarse interval n, accumulated left to
    /// right starting from row nJ. Throws DomainError when n J + J > NJ.
    SpectralField coarse_increment(std::size_t n, std::size_t fine_per_coarse) const;

    std::span<const double> data() const noexcept { return increments_; }
    /// Mutable view, for tests that perturb the lattice.
    std::span<double> data() noexcept { return increments_; }

    static NoisePath zero(std::size_t fine_steps, std::size_t modes);

private:
    std::size_t fine_steps_;
    std::size_t modes_;
    std::vector<double> increments_;
};

/// Single lattice entry sqrt(gamma_p dt) xi(seed, sample, l, p), p 1-based.
double noise_increment(const NoiseSpec& spec, double fine_step, std::size_t l, std::size_t p);

/// Materializes the full NJ x P lattice for grid.fine_steps() steps of size grid.fine_step().
NoisePath sample_path(const NoiseSpec& spec, const TimeGrid& grid);

/// coarse_increment(n, grid.fine_per_coarse()), checking that the lattice matches the grid.
SpectralField coarse_increment(const NoisePath& path, std::size_t n, const TimeGrid& grid);

}  // namespace spde_parareal
