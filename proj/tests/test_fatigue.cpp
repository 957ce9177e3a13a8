#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fatigue_pf/errors.hpp"
#include "fatigue_pf/fatigue.hpp"

using namespace fpf;

namespace {

FieldState blank(const Grid1D& g)
{
    const Field zero(g.n_nodes(), 0.0);
    return initial_state(g, zero, zero, zero);
}

} // namespace

TEST_CASE("nodal_gradient is exact on linear fields, one-sided at the ends")
{
    const Grid1D g(1.0, 8);
    Field f(g.n_nodes());
    for (int i = 0; i < g.n_nodes(); ++i)
        f[i] = 3.0 * g.node(i) - 1.0;
    for (double d : nodal_gradient(f, g.spacing()))
        CHECK(d == doctest::Approx(3.0));

    for (int i = 0; i < g.n_nodes(); ++i)
        f[i] = g.node(i) * g.node(i);
    const Field d = nodal_gradient(f, g.spacing());
    CHECK(d[4] == doctest::Approx(2.0 * g.node(4)));
    CHECK(d[0] == doctest::Approx(g.spacing()));  // forward difference of x^2 at 0
}

TEST_CASE("mech_power_density trivial cases")
{
    const Grid1D g(1.0, 10);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 2.0);
    FieldState s = blank(g);
    for (int i = 1; i < g.n_nodes() - 1; ++i)
        s.u[i] = std::sin(std::numbers::pi * g.node(i));
    for (double x : mech_power_density(s, p, g))
        CHECK(x == 0.0);

    s.v = s.u;
    s.phi.assign(g.n_nodes(), 1.0);
    for (double x : mech_power_density(s, p, g))
        CHECK(x == 0.0);
}

TEST_CASE("mech_power_density on a linear ramp gives alpha^2 inside")
{
    const Grid1D g(1.0, 10);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 1.0);
    FieldState s = blank(g);
    const double alpha = 0.7;
    for (int i = 0; i < g.n_nodes(); ++i)
        s.u[i] = s.v[i] = alpha * g.node(i);
    const Field pw = mech_power_density(s, p, g);
    for (int i = 1; i < g.n_nodes() - 1; ++i)
        CHECK(pw[i] == doctest::Approx(alpha * alpha));
}

TEST_CASE("mech_power_density scales with the undamaged fraction")
{
    const Grid1D g(1.0, 10);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 1.5);
    FieldState s = blank(g);
    for (int i = 0; i < g.n_nodes(); ++i) {
        s.u[i] = g.node(i);
        s.v[i] = 2.0 * g.node(i);
        s.phi[i] = 0.25;
    }
    for (double x : mech_power_density(s, p, g))
        CHECK(x == doctest::Approx(0.75 * 1.5 * 2.0));
}

TEST_CASE("advance_fatigue is the trapezoidal rule")
{
    const Grid1D g(1.0, 4);
    FieldState s = blank(g);
    s.fatigue = {1.0, 2.0, 3.0, 4.0, 5.0};
    const Field zero(5, 0.0);
    CHECK(advance_fatigue(s, zero, zero, 0.1) == s.fatigue);

    const Field c(5, 2.0);
    const Field out = advance_fatigue(s, c, c, 0.25);
    for (int i = 0; i < 5; ++i)
        CHECK(out[i] == doctest::Approx(s.fatigue[i] + 0.5));

    const Field p0{0, 1, 2, 3, 4}, p1{4, 3, 2, 1, 0};
    const Field mixed = advance_fatigue(s, p0, p1, 0.5);
    for (int i = 0; i < 5; ++i)
        CHECK(mixed[i] == doctest::Approx(s.fatigue[i] + 1.0));

    CHECK_THROWS_AS(advance_fatigue(s, c, c, 0.0), InvalidArgument);
    CHECK_THROWS_AS(advance_fatigue(s, c, c, -1.0), InvalidArgument);
    CHECK_THROWS_AS(advance_fatigue(s, Field(3, 0.0), c, 0.1), InvalidArgument);
}

TEST_CASE("manufactured oscillation: accumulated fatigue matches a 100x finer trapezoid to O(dt^2)")
{
    const Grid1D g(1.0, 16);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 1.3);
    const double T = 2.0;
    auto state_at = [&](double t) {
        FieldState s = blank(g);
        for (int i = 1; i < g.n_nodes() - 1; ++i) {
            const double shape = std::sin(std::numbers::pi * g.node(i));
            s.u[i] = std::sin(t) * shape;
            s.v[i] = std::cos(t) * shape;
        }
        s.t = t;
        return s;
    };
    auto accumulate = [&](int steps) {
        const double dt = T / steps;
        FieldState s = state_at(0.0);
        for (int n = 0; n < steps; ++n) {
            FieldState next = state_at((n + 1) * dt);
            next.fatigue = advance_fatigue(s, mech_power_density(s, p, g), mech_power_density(next, p, g), dt);
            s = next;
        }
        return s.fatigue;
    };
    const Field oracle = accumulate(4000);
    double err_coarse = 0.0, err_fine = 0.0;
    const Field coarse = accumulate(40);
    const Field fine = accumulate(80);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        err_coarse = std::max(err_coarse, std::abs(coarse[i] - oracle[i]));
        err_fine = std::max(err_fine, std::abs(fine[i] - oracle[i]));
    }
    CHECK(err_coarse > 0.0);
    CHECK(err_coarse / err_fine == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("frozen-phase elastic cycle returns fatigue to its start value")
{
    const Grid1D g(1.0, 16);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 1.0);
    const int steps = 400;
    const double dt = 2.0 * std::numbers::pi / steps;
    FieldState s = blank(g);
    s.phi.assign(g.n_nodes(), 0.3);
    auto set_time = [&](FieldState& x, double t) {
        for (int i = 1; i < g.n_nodes() - 1; ++i) {
            const double shape = std::sin(std::numbers::pi * g.node(i));
            x.u[i] = std::sin(t) * shape;
            x.v[i] = std::cos(t) * shape;
        }
    };
    set_time(s, 0.0);
    for (int n = 0; n < steps; ++n) {
        FieldState next = s;
        set_time(next, (n + 1) * dt);
        next.fatigue = advance_fatigue(s, mech_power_density(s, p, g), mech_power_density(next, p, g), dt);
        s = next;
    }
    for (double f : s.fatigue)
        CHECK(std::abs(f) < 1e-12);
}

TEST_CASE("closed form on a virgin static state")
{
    const Grid1D g(1.0, 10);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 2.0);
    FieldState s = blank(g);
    for (double f : fatigue_elastic_closed_form(s, p, g))
        CHECK(f == 0.0);

    for (int i = 0; i < g.n_nodes(); ++i) {
        s.u[i] = 0.1 * g.node(i);
        s.phi[i] = 0.4;
    }
    for (double f : fatigue_elastic_closed_form(s, p, g))
        CHECK(f == doctest::Approx(0.5 * 0.6 * 2.0 * 0.01));

    s.hist_H.assign(g.n_nodes(), 0.2);
    for (double f : fatigue_elastic_closed_form(s, p, g))
        CHECK(f == doctest::Approx(0.5 * 0.6 * 2.0 * 0.01 + 0.1));
}

TEST_CASE("thermal fatigue density")
{
    const Grid1D g(1.0, 10);
    MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 1.0);
    p.thermal = ThermalParams{1.0, 0.5, 0.0, 2.0};
    FieldState s = blank(g);
    s.theta.assign(g.n_nodes(), 2.0);
    for (int i = 1; i < g.n_nodes() - 1; ++i) {
        s.u[i] = std::sin(std::numbers::pi * g.node(i));
        s.v[i] = 0.5 * s.u[i];
    }

    SUBCASE("uniform temperature divides the mechanical integrand")
    {
        const Field iso = mech_power_density(s, p, g);
        const Field th = thermal_fatigue_density(s, p, g);
        for (std::size_t i = 0; i < th.size(); ++i)
            CHECK(th[i] == doctest::Approx(iso[i] / 2.0));
    }
    SUBCASE("linear temperature with no motion is strictly positive")
    {
        s.v.assign(g.n_nodes(), 0.0);
        for (int i = 0; i < g.n_nodes(); ++i)
            s.theta[i] = 1.0 + g.node(i);
        const Field th = thermal_fatigue_density(s, p, g);
        for (int i = 0; i < g.n_nodes(); ++i) {
            CHECK(th[i] > 0.0);
            const double expect = 0.5 * 1.0 / (s.theta[i] * s.theta[i]);
            CHECK(th[i] == doctest::Approx(expect));
        }
        const Field flux = heat_flux_fatigue_density(s, p, g);
        for (std::size_t i = 0; i < th.size(); ++i)
            CHECK(flux[i] == doctest::Approx(th[i]));
    }
    SUBCASE("fully damaged material accumulates nothing")
    {
        s.phi.assign(g.n_nodes(), 1.0);
        for (int i = 0; i < g.n_nodes(); ++i)
            s.theta[i] = 1.0 + g.node(i);
        for (double x : thermal_fatigue_density(s, p, g))
            CHECK(x == 0.0);
    }
    SUBCASE("non-positive temperature is singular")
    {
        s.theta[3] = 0.0;
        CHECK_THROWS_AS(thermal_fatigue_density(s, p, g), SingularTemperature);
        CHECK_THROWS_AS(heat_flux_fatigue_density(s, p, g), SingularTemperature);
    }
}
