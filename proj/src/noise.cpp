#include "spde_parareal/noise.hpp"

#include "spde_parareal/errors.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace spde_parareal {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

double standard_normal(std::uint64_t seed, std::uint64_t sample_index, std::uint64_t step,
                       std::uint64_t mode) noexcept {
    // Counter layout: (step, mode, sample lo, sample hi); step and mode fit in 32 bits
    // for every lattice this library materializes.
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(mode),
        static_cast<std::uint32_t>(sample_index), static_cast<std::uint32_t>(sample_index >> 32)};
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed),
                                           static_cast<std::uint32_t>(seed >> 32)};
    const auto r = philox4x32(ctr, key);
    const std::uint64_t bits = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    // Midpoint of one of 2^53 equal cells: strictly inside (0, 1).
    const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double gamma(long p, double alpha_bar) {
    if (!(alpha_bar > 0.0)) {
        throw DomainError("alpha_bar must be positive");
    }
    return std::pow(eigenvalue(p), 0.5 - 2.0 * alpha_bar);
}

void NoiseSpec::validate() const {
    if (!(alpha_bar > 0.0)) {
        throw ConfigError("alpha_bar must be positive");
    }
    if (modes < 1) {
        throw ConfigError("noise needs at least one mode");
    }
    for (std::size_t p = 1; p <= modes; ++p) {
        const double g = gamma(static_cast<long>(p), alpha_bar);
        if (!std::isfinite(g) || !(g > 0.0)) {
            throw ConfigError("gamma_" + std::to_string(p) + " is not finite and positive for alpha_bar = " +
                              std::to_string(alpha_bar));
        }
    }
}

NoisePath::NoisePath(std::size_t fine_steps, std::size_t modes, std::vector<double> increments)
    : fine_steps_(fine_steps), modes_(modes), increments_(std::move(increments)) {
    if (increments_.size() != fine_steps_ * modes_) {
        throw ConfigError("noise lattice size does not match " + std::to_string(fine_steps_) + " x " +
                          std::to_string(modes_));
    }
}

NoisePath NoisePath::zero(std::size_t fine_steps, std::size_t modes) {
    return NoisePath(fine_steps, modes, std::vector<double>(fine_steps * modes, 0.0));
}

std::span<const double> NoisePath::fine_increment(std::size_t l) const {
    if (l >= fine_steps_) {
        throw DomainError("fine step " + std::to_string(l) + " outside lattice of " +
                          std::to_string(fine_steps_) + " rows");
    }
    return std::span<const double>(increments_).subspan(l * modes_, modes_);
}

SpectralField NoisePath::coarse_increment(std::size_t n, std::size_t fine_per_coarse) const {
    if (fine_per_coarse < 1 || (n + 1) * fine_per_coarse > fine_steps_) {
        throw DomainError("coarse interval " + std::to_string(n) + " outside lattice");
    }
    const std::size_t first = n * fine_per_coarse;
    const auto row0 = fine_increment(first);
    SpectralField sum(std::vector<double>(row0.begin(), row0.end()));
    for (std::size_t l = first + 1; l < first + fine_per_coarse; ++l) {
        const double* row = increments_.data() + l * modes_;
        for (std::size_t p = 0; p < modes_; ++p) sum[p] += row[p];
    }
    return sum;
}

double noise_increment(const NoiseSpec& spec, double fine_step, std::size_t l, std::size_t p) {
    const double scale = std::sqrt(gamma(static_cast<long>(p), spec.alpha_bar) * fine_step);
    return scale * standard_normal(spec.seed, spec.sample_index, l, p);
}

NoisePath sample_path(const NoiseSpec& spec, const TimeGrid& grid) {
    spec.validate();
    const std::size_t rows = grid.fine_steps();
    const std::size_t modes = spec.modes;
    const double dt = grid.fine_step();
    std::vector<double> scale(modes);
    for (std::size_t p = 1; p <= modes; ++p) {
        scale[p - 1] = std::sqrt(gamma(static_cast<long>(p), spec.alpha_bar) * dt);
    }
    std::vector<double> data(rows * modes);
    for (std::size_t l = 0; l < rows; ++l) {
        for (std::size_t p = 1; p <= modes; ++p) {
            data[l * modes + p - 1] = scale[p - 1] * standard_normal(spec.seed, spec.sample_index, l, p);
        }
    }
    return NoisePath(rows, modes, std::move(data));
}

SpectralField coarse_increment(const NoisePath& path, std::size_t n, const TimeGrid& grid) {
    if (path.fine_steps() != grid.fine_steps()) {
        throw ConfigError("noise lattice has " + std::to_string(path.fine_steps()) +
                          " rows, grid has " + std::to_string(grid.fine_steps()) + " fine steps");
    }
    if (n >= grid.coarse_intervals()) {
        throw DomainError("coarse interval " + std::to_string(n) + " >= N");
    }
    return path.coarse_increment(n, grid.fine_per_coarse());
}

}  // namespace spde_parareal
