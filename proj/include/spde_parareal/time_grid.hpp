#pragma once

#include <cstddef>

namespace spde_parareal {

/// Two-level time grid: N coarse intervals of size dT = T/N, each split into
/// J fine steps of size dt = T/(N J).
class TimeGrid {
public:
    /// Throws ConfigError unless T > 0, N >= 1, J >= 1.
    TimeGrid(double final_time, std::size_t coarse_intervals, std::size_t fine_per_coarse);

    double final_time() const noexcept { return final_time_; }
    std::size_t coarse_intervals() const noexcept { return coarse_intervals_; }
    std::size_t fine_per_coarse() const noexcept { return fine_per_coarse_; }
    std::size_t fine_steps() const noexcept { return coarse_intervals_ * fine_per_coarse_; }

    double coarse_step() const noexcept { return final_time_ / static_cast<double>(coarse_intervals_); }
    double fine_step() const noexcept { return final_time_ / static_cast<double>(fine_steps()); }

    /// t_n = n dT.
    double coarse_time(std::size_t n) const noexcept;
    /// t_{n,j} = t_n + j dt.
    double fine_time(std::size_t n, std::size_t j) const noexcept;

private:
    double final_time_;
    std::size_t coarse_intervals_;
    std::size_t fine_per_coarse_;
};

}  // namespace spde_parareal
