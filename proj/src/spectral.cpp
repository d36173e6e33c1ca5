#include "spde_parareal/spectral.hpp"

#include "spde_parareal/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace spde_parareal {

namespace {

// FFTW's planner is not thread-safe; plan execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void require_same_modes(const SpectralField& a, const SpectralField& b) {
    if (a.modes() != b.modes()) {
        throw ConfigError("spectral fields have different mode counts: " +
                          std::to_string(a.modes()) + " vs " + std::to_string(b.modes()));
    }
}

}  // namespace

namespace detail {

// Unnormalized DST-I of length n: y_k = 2 sum_j x_j sin(pi (j+1)(k+1)/(n+1)).
class SineTransform {
public:
    explicit SineTransform(std::size_t n) : n_(n) {
        std::lock_guard lock(planner_mutex());
        double* in = fftw_alloc_real(n);
        double* out = fftw_alloc_real(n);
        plan_ = fftw_plan_r2r_1d(static_cast<int>(n), in, out, FFTW_RODFT00,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        if (plan_ == nullptr) {
            throw ConfigError("failed to create sine transform plan of size " + std::to_string(n));
        }
    }

    ~SineTransform() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }

    SineTransform(const SineTransform&) = delete;
    SineTransform& operator=(const SineTransform&) = delete;

    void execute(std::span<double> in, std::span<double> out) const {
        fftw_execute_r2r(plan_, in.data(), out.data());
    }

    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    fftw_plan plan_ = nullptr;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// SpectralField

SpectralField::SpectralField(std::size_t modes) : coeffs_(modes, 0.0) {}

SpectralField::SpectralField(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (!all_finite()) {
        throw DomainError("spectral field has non-finite coefficients");
    }
}

SpectralField SpectralField::basis(std::size_t modes, std::size_t p) {
    if (p < 1 || p > modes) {
        throw DomainError("basis index " + std::to_string(p) + " outside 1.." +
                          std::to_string(modes));
    }
    SpectralField e(modes);
    e.coeffs_[p - 1] = 1.0;
    return e;
}

bool SpectralField::all_finite() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return std::isfinite(c); });
}

double SpectralField::norm() const noexcept {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return std::sqrt(s);
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_modes(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_modes(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double factor) noexcept {
    for (double& c : coeffs_) c *= factor;
    return *this;
}

SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
SpectralField operator*(double factor, SpectralField field) { return field *= factor; }

double Nonlinearity::operator()(double x) const noexcept {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::ScaledCos: return amplitude * std::cos(x);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Operators diagonal in the sine basis

double eigenvalue(long p) {
    if (p < 1) {
        throw DomainError("eigenvalue index must be >= 1, got " + std::to_string(p));
    }
    const double x = std::numbers::pi * static_cast<double>(p);
    return x * x;
}

SpectralField apply_semigroup(const SpectralField& u, double t) {
    if (!(t >= 0.0)) {
        throw DomainError("semigroup time must be nonnegative");
    }
    SpectralField out = u;
    for (std::size_t i = 0; i < out.modes(); ++i) {
        out[i] *= std::exp(-eigenvalue(static_cast<long>(i) + 1) * t);
    }
    return out;
}

SpectralField apply_resolvent(const SpectralField& u, double dT) {
    if (!(dT > 0.0)) {
        throw DomainError("resolvent step must be positive");
    }
    SpectralField out = u;
    for (std::size_t i = 0; i < out.modes(); ++i) {
        out[i] /= 1.0 + eigenvalue(static_cast<long>(i) + 1) * dT;
    }
    return out;
}

double fractional_norm(const SpectralField& u, double alpha) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.modes(); ++i) {
        const double w = std::pow(eigenvalue(static_cast<long>(i) + 1), 2.0 * alpha);
        s += w * u[i] * u[i];
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// SpectralSpace

SpectralSpace::SpectralSpace(std::size_t modes, std::size_t grid_points)
    : modes_(modes), grid_points_(grid_points) {
    if (modes < 1) {
        throw ConfigError("mode count must be >= 1");
    }
    if (grid_points < modes) {
        throw ConfigError("collocation grid (" + std::to_string(grid_points) +
                          " points) smaller than mode count " + std::to_string(modes));
    }
    eigenvalues_.reserve(modes);
    for (std::size_t p = 1; p <= modes; ++p) eigenvalues_.push_back(eigenvalue(static_cast<long>(p)));
    transform_ = std::make_shared<const detail::SineTransform>(grid_points);
}

SpectralSpace::SpectralSpace(std::size_t modes) : SpectralSpace(modes, 2 * modes + 1) {}

PhysicalField SpectralSpace::to_physical(const SpectralField& u) const {
    if (u.modes() != modes_) {
        throw ConfigError("field has " + std::to_string(u.modes()) + " modes, space has " +
                          std::to_string(modes_));
    }
    std::vector<double> in(grid_points_, 0.0);
    std::copy(u.coeffs().begin(), u.coeffs().end(), in.begin());
    PhysicalField v{std::vector<double>(grid_points_)};
    transform_->execute(in, v.values);
    const double scale = 1.0 / std::numbers::sqrt2;
    for (double& x : v.values) x *= scale;
    return v;
}

SpectralField SpectralSpace::to_spectral(const PhysicalField& v) const {
    if (v.grid_points() != grid_points_) {
        throw ConfigError("physical field has " + std::to_string(v.grid_points()) +
                          " points, space has " + std::to_string(grid_points_));
    }
    std::vector<double> in = v.values;
    std::vector<double> out(grid_points_);
    transform_->execute(in, out);
    const double scale = 1.0 / (std::numbers::sqrt2 * static_cast<double>(grid_points_ + 1));
    SpectralField c(modes_);
    for (std::size_t i = 0; i < modes_; ++i) c[i] = out[i] * scale;
    return c;
}

SpectralField SpectralSpace::apply_nonlinearity(const SpectralField& u, const Nonlinearity& f) const {
    if (f.is_zero()) {
        return SpectralField(modes_);
    }
    PhysicalField v = to_physical(u);
    for (double& x : v.values) x = f(x);
    return to_spectral(v);
}

}  // namespace spde_parareal
