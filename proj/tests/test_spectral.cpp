#include "spde_parareal/errors.hpp"
#include "spde_parareal/spectral.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace spde_parareal;
using test_support::random_field;
using test_support::rel_diff;

namespace {

// Direct O(G P) sine synthesis, independent of the FFT path.
std::vector<double> synthesize(const SpectralField& u, std::size_t G) {
    std::vector<double> v(G, 0.0);
    for (std::size_t i = 1; i <= G; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(G + 1);
        for (std::size_t p = 1; p <= u.modes(); ++p) {
            v[i - 1] += u[p - 1] * std::numbers::sqrt2 * std::sin(std::numbers::pi * static_cast<double>(p) * x);
        }
    }
    return v;
}

// Composite Simpson rule for int_0^1 sqrt(2) sin(p pi x) dx.
double sine_integral_quadrature(int p) {
    const int n = 200000;
    const double h = 1.0 / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        s += w * std::numbers::sqrt2 * std::sin(std::numbers::pi * p * i * h);
    }
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("eigenvalues") {
    CHECK(eigenvalue(1) == doctest::Approx(9.869604401089358).epsilon(1e-15));
    CHECK(eigenvalue(2) == doctest::Approx(39.47841760435743).epsilon(1e-15));
    CHECK_THROWS_AS(eigenvalue(0), DomainError);
    CHECK_THROWS_AS(eigenvalue(-3), DomainError);
}

TEST_CASE("semigroup") {
    std::mt19937_64 rng(11);
    const SpectralField u = random_field(rng, 16);
    CHECK(apply_semigroup(u, 0.0) == u);

    const SpectralField e1 = SpectralField::basis(4, 1);
    CHECK(apply_semigroup(e1, 1.0 / (std::numbers::pi * std::numbers::pi))[0] ==
          doctest::Approx(0.36787944117144233).epsilon(1e-14));

    CHECK_THROWS_AS(apply_semigroup(u, -1e-3), DomainError);

    SUBCASE("contraction |e^{tA}u| <= e^{-lambda_1 t}|u|") {
        for (int trial = 0; trial < 50; ++trial) {
            const SpectralField v = random_field(rng, 32);
            for (double t : {0.1, 1.0}) {
                CHECK(apply_semigroup(v, t).norm() <= std::exp(-eigenvalue(1) * t) * v.norm() * (1 + 1e-15));
            }
        }
    }

    SUBCASE("semigroup property") {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            const SpectralField v = random_field(rng, 8);
            const double s = unif(rng), t = unif(rng);
            const SpectralField a = apply_semigroup(apply_semigroup(v, s), t);
            const SpectralField b = apply_semigroup(v, s + t);
            for (std::size_t p = 0; p < 8; ++p) {
                if (b[p] != 0.0 || a[p] != 0.0) CHECK(rel_diff(a[p], b[p]) <= 1e-12);
            }
        }
    }

    SUBCASE("smoothing lambda^a e^{-lambda t} <= (a/(e t))^a") {
        for (double alpha : {0.1, 0.25, 0.5, 1.0}) {
            for (double t : {1e-4, 1e-2, 0.3, 2.0}) {
                const double bound = std::pow(alpha / (std::numbers::e * t), alpha);
                for (long p = 1; p <= 200; ++p) {
                    const double l = eigenvalue(p);
                    CHECK(std::pow(l, alpha) * std::exp(-l * t) <= bound * (1 + 1e-12));
                }
            }
        }
    }
}

TEST_CASE("resolvent") {
    const SpectralField e1 = SpectralField::basis(3, 1);
    CHECK(apply_resolvent(e1, 1.0 / eigenvalue(1))[0] == doctest::Approx(0.5).epsilon(1e-15));

    std::mt19937_64 rng(5);
    // Relative deviation is lambda_p dT, below 1e-9 for p <= 10.
    const SpectralField u = random_field(rng, 10);
    const SpectralField r = apply_resolvent(u, 1e-12);
    for (std::size_t p = 0; p < 10; ++p) CHECK(rel_diff(r[p], u[p]) <= 1e-9);

    for (int trial = 0; trial < 20; ++trial) {
        const SpectralField v = random_field(rng, 20);
        CHECK(apply_resolvent(v, 0.01 * (trial + 1)).norm() <= v.norm());
    }
    CHECK_THROWS_AS(apply_resolvent(u, 0.0), DomainError);
    CHECK_THROWS_AS(apply_resolvent(u, -1.0), DomainError);
}

TEST_CASE("fractional norm") {
    CHECK(fractional_norm(SpectralField::basis(4, 1), 0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(fractional_norm(SpectralField::basis(4, 2), -0.5) ==
          doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(fractional_norm(SpectralField(6), 0.7) == 0.0);
    std::mt19937_64 rng(3);
    const SpectralField u = random_field(rng, 10);
    CHECK(fractional_norm(u, 0.0) == doctest::Approx(u.norm()).epsilon(1e-15));
}

TEST_CASE("field construction rejects non-finite values") {
    CHECK_THROWS_AS(SpectralField(std::vector<double>{1.0, NAN}), DomainError);
    CHECK_THROWS_AS(SpectralField(std::vector<double>{INFINITY}), DomainError);
    CHECK_THROWS_AS(SpectralField::basis(3, 0), DomainError);
}

TEST_CASE("collocation transforms") {
    CHECK_THROWS_AS(SpectralSpace(5, 4), ConfigError);
    CHECK_THROWS_AS(SpectralSpace(0, 4), ConfigError);

    SUBCASE("zero field") {
        const SpectralSpace space(6);
        for (double v : space.to_physical(SpectralField(6)).values) CHECK(v == 0.0);
        const SpectralField c = space.to_spectral(PhysicalField{std::vector<double>(13, 0.0)});
        for (std::size_t p = 0; p < 6; ++p) CHECK(c[p] == 0.0);
    }

    SUBCASE("e_1 on three points") {
        const SpectralSpace space(1, 3);
        const auto v = space.to_physical(SpectralField::basis(1, 1)).values;
        REQUIRE(v.size() == 3);
        CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(v[1] == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
        CHECK(v[2] == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("synthesis matches direct summation") {
        std::mt19937_64 rng(17);
        for (std::size_t P : {1u, 7u, 40u}) {
            for (std::size_t G : {P, 2 * P + 1, 3 * P + 4}) {
                const SpectralSpace space(P, G);
                const SpectralField u = random_field(rng, P);
                const auto fast = space.to_physical(u).values;
                const auto slow = synthesize(u, G);
                for (std::size_t i = 0; i < G; ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12).scale(1.0));
            }
        }
    }

    SUBCASE("round trip and Parseval") {
        std::mt19937_64 rng(23);
        for (std::size_t P : {1u, 5u, 64u, 100u}) {
            const SpectralSpace space(P);
            for (int trial = 0; trial < 5; ++trial) {
                const SpectralField u = random_field(rng, P);
                const PhysicalField v = space.to_physical(u);
                const SpectralField back = space.to_spectral(v);
                CHECK(test_support::rel_field_diff(back, u) <= 1e-12);

                double grid_sq = 0.0;
                for (double x : v.values) grid_sq += x * x;
                const double grid_norm = std::sqrt(grid_sq / static_cast<double>(space.grid_points() + 1));
                CHECK(rel_diff(grid_norm, u.norm()) <= 1e-10);
            }
        }
    }

    SUBCASE("analysis of sqrt(2) sin(pi x)") {
        const std::size_t G = 31;
        const SpectralSpace space(8, G);
        PhysicalField v{std::vector<double>(G)};
        for (std::size_t i = 1; i <= G; ++i) {
            v.values[i - 1] = std::numbers::sqrt2 * std::sin(std::numbers::pi * static_cast<double>(i) / (G + 1));
        }
        const SpectralField c = space.to_spectral(v);
        CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t p = 1; p < 8; ++p) CHECK(std::abs(c[p]) <= 1e-12);
    }

    SUBCASE("constant function against quadrature") {
        const SpectralSpace space(4, 511);
        const SpectralField c = space.to_spectral(PhysicalField{std::vector<double>(511, 1.0)});
        for (int p = 1; p <= 4; ++p) {
            const double oracle = sine_integral_quadrature(p);
            CHECK(std::abs(c[p - 1] - oracle) <= 1e-3);
        }
        // Quadrature oracle itself against the closed form 2 sqrt(2)/(p pi) (odd p).
        CHECK(sine_integral_quadrature(1) == doctest::Approx(2 * std::numbers::sqrt2 / std::numbers::pi).epsilon(1e-9));
        CHECK(std::abs(sine_integral_quadrature(2)) <= 1e-9);
    }
}

TEST_CASE("Nemytskii nonlinearity") {
    const SpectralSpace space(4, 511);
    std::mt19937_64 rng(9);
    const SpectralField u = random_field(rng, 4);

    const SpectralField z = space.apply_nonlinearity(u, Nonlinearity::zero());
    for (std::size_t p = 0; p < 4; ++p) CHECK(z[p] == 0.0);

    const SpectralField c1 = space.apply_nonlinearity(SpectralField(4), Nonlinearity::scaled_cos(1.0));
    for (int p = 1; p <= 4; ++p) CHECK(std::abs(c1[p - 1] - sine_integral_quadrature(p)) <= 1e-3);

    const SpectralField c5 = space.apply_nonlinearity(SpectralField(4), Nonlinearity::scaled_cos(5.0));
    for (std::size_t p = 0; p < 4; ++p) CHECK(c5[p] == doctest::Approx(5.0 * c1[p]).epsilon(1e-13).scale(1e-13));

    SUBCASE("Lipschitz constant <= amplitude") {
        const SpectralSpace sp(30);
        for (int trial = 0; trial < 100; ++trial) {
            const double a = 0.5 + trial % 5;
            const SpectralField x = random_field(rng, 30, 2.0);
            const SpectralField y = random_field(rng, 30, 2.0);
            const Nonlinearity f = Nonlinearity::scaled_cos(a);
            const double lhs = (sp.apply_nonlinearity(x, f) - sp.apply_nonlinearity(y, f)).norm();
            CHECK(lhs <= a * (x - y).norm() * (1 + 1e-12));
        }
    }
}
