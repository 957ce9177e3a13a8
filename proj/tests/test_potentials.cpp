#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fatigue_pf/errors.hpp"
#include "fatigue_pf/potentials.hpp"

using namespace fpf;

TEST_CASE("clamp_phase follows min(max(phi, 0), 1)")
{
    CHECK(clamp_phase(0.5) == 0.5);
    CHECK(clamp_phase(-0.3) == 0.0);
    CHECK(clamp_phase(1.7) == 1.0);
    CHECK(clamp_phase(0.0) == 0.0);
    CHECK(clamp_phase(1.0) == 1.0);
}

TEST_CASE("potential_F is minus the clamped phase")
{
    CHECK(potential_F(0.0) == 0.0);
    CHECK(potential_F(0.5) == -0.5);
    CHECK(potential_F(2.0) == -1.0);
    CHECK(potential_F(-4.0) == 0.0);
}

TEST_CASE("potential_G branches")
{
    CHECK(potential_G(1.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(potential_G(0.5) == doctest::Approx(0.25 - 0.125 / 6.0).epsilon(1e-15));
    CHECK(potential_G(-1.0) == 0.0);
    CHECK(potential_G(3.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("potential_G is continuous at both breakpoints")
{
    const double e = 1e-12;
    CHECK(std::abs(potential_G(-e) - potential_G(e)) < 1e-11);
    CHECK(std::abs(potential_G(1.0 - e) - potential_G(1.0 + e)) < 1e-11);
}

TEST_CASE("dF and dG values")
{
    CHECK(dF(0.5) == -1.0);
    CHECK(dF(1.5) == 0.0);
    CHECK(dF(-0.1) == 0.0);
    CHECK(dF(0.0) == -1.0);
    CHECK(dF(1.0) == -1.0);

    CHECK(dG(0.0) == 0.0);
    CHECK(dG(1.0) == 1.5);
    CHECK(dG(1.0 + 1e-9) == 0.0);
    CHECK(dG(-1e-9) == 0.0);
}

TEST_CASE("dG matches a central difference of G inside (0, 1)")
{
    const double h = 1e-5;
    for (double phi = 0.01; phi < 0.995; phi += 0.0137) {
        const double fd = (potential_G(phi + h) - potential_G(phi - h)) / (2.0 * h);
        CHECK(std::abs(fd - dG(phi)) <= 1e-8);
    }
}

TEST_CASE("dF matches a central difference of F inside (0, 1) and outside")
{
    const double h = 1e-6;
    for (double phi : {-0.5, 0.2, 0.7, 1.4}) {
        const double fd = (potential_F(phi + h) - potential_F(phi - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(dF(phi)).epsilon(1e-8));
    }
}

TEST_CASE("degradation is quadratic in the clamped phase")
{
    CHECK(degradation(0.0) == 1.0);
    CHECK(degradation(0.5) == 0.25);
    CHECK(degradation(1.0) == 0.0);
    CHECK(degradation(2.0) == 0.0);
    CHECK(degradation(-1.0) == 1.0);
}

TEST_CASE("non-finite inputs are rejected")
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    for (double x : {nan, inf, -inf}) {
        CHECK_THROWS_AS(clamp_phase(x), InvalidArgument);
        CHECK_THROWS_AS(potential_F(x), InvalidArgument);
        CHECK_THROWS_AS(potential_G(x), InvalidArgument);
        CHECK_THROWS_AS(dF(x), InvalidArgument);
        CHECK_THROWS_AS(dG(x), InvalidArgument);
        CHECK_THROWS_AS(degradation(x), InvalidArgument);
    }
}

TEST_CASE("random phases: clamp idempotent, F nonincreasing, G nondecreasing and bounded")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-3.0, 4.0);
    for (int k = 0; k < 2000; ++k) {
        const double x = d(rng);
        const double y = d(rng);
        CHECK(clamp_phase(clamp_phase(x)) == clamp_phase(x));
        CHECK(potential_F(x) == -clamp_phase(x));
        const double lo = std::min(x, y), hi = std::max(x, y);
        CHECK(potential_F(hi) <= potential_F(lo));
        CHECK(potential_G(hi) >= potential_G(lo));
        CHECK(potential_G(x) >= 0.0);
        CHECK(potential_G(x) <= 5.0 / 6.0 + 1e-15);
        CHECK(dG(x) >= 0.0);
        CHECK(dF(x) <= 0.0);
    }
}
