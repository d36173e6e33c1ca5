#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace spde_parareal {

/// Coefficients c_p (p = 1..P) of a field in the Dirichlet sine basis
/// e_p(x) = sqrt(2) sin(p pi x). Index 0 holds mode p = 1.
class SpectralField {
public:
    SpectralField() = default;
    /// Zero field with `modes` coefficients.
    explicit SpectralField(std::size_t modes);
    /// Throws DomainError if any entry is not finite.
    explicit SpectralField(std::vector<double> coeffs);

    /// Unit vector e_p (1-based mode index).
    static SpectralField basis(std::size_t modes, std::size_t p);

    std::size_t modes() const noexcept { return coeffs_.size(); }
    double operator[](std::size_t i) const noexcept { return coeffs_[i]; }
    double& operator[](std::size_t i) noexcept { return coeffs_[i]; }

    std::span<const double> coeffs() const noexcept { return coeffs_; }
    std::span<double> coeffs() noexcept { return coeffs_; }

    bool all_finite() const noexcept;

    /// H = L^2(0,1) norm.
    double norm() const noexcept;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double factor) noexcept;

    friend bool operator==(const SpectralField&, const SpectralField&) = default;

private:
    std::vector<double> coeffs_;
};

SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
SpectralField operator*(double factor, SpectralField field);

/// Samples u(x_i) at the interior collocation points x_i = i/(G+1), i = 1..G.
struct PhysicalField {
    std::vector<double> values;

    std::size_t grid_points() const noexcept { return values.size(); }
};

/// Pointwise nonlinearity F(u) = f(u(x)) used as the drift term.
struct Nonlinearity {
    enum class Kind { Zero, ScaledCos };

    Kind kind = Kind::Zero;
    double amplitude = 0.0;

    static Nonlinearity zero() { return {}; }
    static Nonlinearity scaled_cos(double a) { return {Kind::ScaledCos, a}; }

    bool is_zero() const noexcept { return kind == Kind::Zero; }
    double operator()(double x) const noexcept;
};

/// lambda_p = (pi p)^2, the p-th eigenvalue of -d^2/dx^2 with Dirichlet conditions.
double eigenvalue(long p);

/// e^{tA} u, A the Dirichlet Laplacian.
SpectralField apply_semigroup(const SpectralField& u, double t);

/// (I - dT A)^{-1} u.
SpectralField apply_resolvent(const SpectralField& u, double dT);

/// |u|_alpha = (sum_p lambda_p^{2 alpha} c_p^2)^{1/2}. alpha < 0 is allowed.
double fractional_norm(const SpectralField& u, double alpha);

namespace detail {
class SineTransform;
}

/// Spectral Galerkin space with P modes and a G-point collocation grid on
/// which Nemytskii nonlinearities are evaluated.
///
/// Synthesis and analysis form the DST-I pair, so to_spectral(to_physical(u))
/// reproduces u for every band-limited u whenever G >= P. Copies share one
/// immutable transform plan and are safe to use from several threads.
class SpectralSpace {
public:
    /// Throws ConfigError unless 1 <= modes <= grid_points.
    SpectralSpace(std::size_t modes, std::size_t grid_points);
    /// G = 2P + 1, enough to avoid aliasing in cos(u).
    explicit SpectralSpace(std::size_t modes);

    std::size_t modes() const noexcept { return modes_; }
    std::size_t grid_points() const noexcept { return grid_points_; }

    /// Eigenvalues lambda_1..lambda_P.
    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

    PhysicalField to_physical(const SpectralField& u) const;
    SpectralField to_spectral(const PhysicalField& v) const;

    /// Sine coefficients of x -> f(u(x)) sampled on the collocation grid.
    SpectralField apply_nonlinearity(const SpectralField& u, const Nonlinearity& f) const;

private:
    std::size_t modes_;
    std::size_t grid_points_;
    std::vector<double> eigenvalues_;
    std::shared_ptr<const detail::SineTransform> transform_;
};

}  // namespace spde_parareal
