#include "spde_parareal/time_grid.hpp"

#include "spde_parareal/errors.hpp"

#include <cmath>

namespace spde_parareal {

TimeGrid::TimeGrid(double final_time, std::size_t coarse_intervals, std::size_t fine_per_coarse)
    : final_time_(final_time), coarse_intervals_(coarse_intervals), fine_per_coarse_(fine_per_coarse) {
    if (!(final_time > 0.0) || !std::isfinite(final_time)) {
        throw ConfigError("final time must be positive and finite");
    }
    if (coarse_intervals < 1 || fine_per_coarse < 1) {
        throw ConfigError("time grid needs N >= 1 and J >= 1");
    }
}

double TimeGrid::coarse_time(std::size_t n) const noexcept {
    return final_time_ * static_cast<double>(n) / static_cast<double>(coarse_intervals_);
}

double TimeGrid::fine_time(std::size_t n, std::size_t j) const noexcept {
    return final_time_ * static_cast<double>(n * fine_per_coarse_ + j) / static_cast<double>(fine_steps());
}

}  // namespace spde_parareal
