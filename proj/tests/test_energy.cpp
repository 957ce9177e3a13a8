#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fatigue_pf/energy.hpp"
#include "fatigue_pf/errors.hpp"
#include "fatigue_pf/fatigue.hpp"
#include "fatigue_pf/solver.hpp"

using namespace fpf;

namespace {

FieldState blank(const Grid1D& g)
{
    const Field zero(g.n_nodes(), 0.0);
    return initial_state(g, zero, zero, zero);
}

double central(const Field& f, int i, double h)
{
    if (i == 0)
        return (f[1] - f[0]) / h;
    if (i == static_cast<int>(f.size()) - 1)
        return (f[i] - f[i - 1]) / h;
    return (f[i + 1] - f[i - 1]) / (2.0 * h);
}

double trapezoid(const Field& f, double h)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
        s += 0.5 * h * (f[i] + f[i + 1]);
    return s;
}

} // namespace

TEST_CASE("integrate is the trapezoidal rule")
{
    CHECK(integrate(Field{1.0, 1.0, 1.0, 1.0, 1.0}, 0.25) == doctest::Approx(1.0));
    CHECK(integrate(Field{0.0, 1.0, 2.0}, 0.5) == doctest::Approx(1.0));
    CHECK(integrate(Field{3.0}, 1.0) == 0.0);
}

TEST_CASE("kinetic energy of a uniformly moving bar")
{
    const Grid1D g(2.0, 10);
    FieldState s = blank(g);
    s.v.assign(g.n_nodes(), 3.0);
    CHECK(kinetic_energy(s, MaterialParams::uniform(g, 0.5, 1.0, 1.0, 1.0), g) ==
          doctest::Approx(0.5 * 0.5 * 9.0 * 2.0));
}

TEST_CASE("internal mechanical power")
{
    const Grid1D g(1.0, 24);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 1.7);
    FieldState s = blank(g);
    const Field zero(g.n_nodes(), 0.0);
    for (int i = 1; i < g.n_nodes() - 1; ++i)
        s.u[i] = std::sin(std::numbers::pi * g.node(i));
    CHECK(internal_mechanical_power(s, p, g, zero) == 0.0);

    for (int i = 1; i < g.n_nodes() - 1; ++i)
        s.v[i] = 0.3 * std::sin(2.0 * std::numbers::pi * g.node(i));

    SUBCASE("virgin material reduces to the integral of a u_x v_x")
    {
        Field d(g.n_nodes());
        for (int i = 0; i < g.n_nodes(); ++i)
            d[i] = 1.7 * central(s.u, i, g.spacing()) * central(s.v, i, g.spacing());
        CHECK(internal_mechanical_power(s, p, g, zero) == doctest::Approx(trapezoid(d, g.spacing())).epsilon(1e-13));
    }
    SUBCASE("with the isothermal fatigue rate it equals the damaged stress power")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> d(-0.2, 1.2);
        for (double& x : s.phi)
            x = d(rng);
        const Field rate = mech_power_density(s, p, g);
        Field direct(g.n_nodes());
        for (int i = 0; i < g.n_nodes(); ++i) {
            const double w = 1.0 - std::clamp(s.phi[i], 0.0, 1.0);
            direct[i] = w * w * 1.7 * central(s.u, i, g.spacing()) * central(s.v, i, g.spacing());
        }
        CHECK(std::abs(internal_mechanical_power(s, p, g, rate) - trapezoid(direct, g.spacing())) <= 1e-12);
    }
}

TEST_CASE("internal structural power")
{
    const Grid1D g(1.0, 20);
    const double L = 1.0;

    SUBCASE("stationary phase")
    {
        const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 1.0);
        FieldState s = blank(g);
        s.phi.assign(g.n_nodes(), 0.4);
        CHECK(internal_structural_power(s, s, p, g, Field(g.n_nodes(), 2.0), 0.1) == 0.0);
    }
    SUBCASE("uniform rise at rate s with no potentials")
    {
        const MaterialParams p = MaterialParams::uniform(g, 3.0, 1.0, 0.0, 1.0);
        FieldState a = blank(g), b = blank(g);
        const double rate = 0.7, dt = 0.01;
        a.phi.assign(g.n_nodes(), 0.2);
        b.phi.assign(g.n_nodes(), 0.2 + rate * dt);
        CHECK(internal_structural_power(a, b, p, g, Field(g.n_nodes(), 0.0), dt) ==
              doctest::Approx(3.0 * rate * rate * L));
    }
    SUBCASE("gradient-energy rate of a growing pulse")
    {
        const MaterialParams p = MaterialParams::uniform(g, 1e-30, 0.5, 0.0, 1.0);
        auto pulse = [&](double t) {
            FieldState s = blank(g);
            s.phi[10] = 0.1 + t;
            return s;
        };
        auto grad_energy = [&](const FieldState& s) {
            Field e(g.n_nodes());
            for (int i = 0; i < g.n_nodes(); ++i) {
                const double gx = central(s.phi, i, g.spacing());
                e[i] = 0.5 / 0.5 * gx * gx;
            }
            return trapezoid(e, g.spacing());
        };
        const double t = 0.2, eps = 1e-4;
        const double fd = (grad_energy(pulse(t + eps)) - grad_energy(pulse(t - eps))) / (2.0 * eps);
        const double coarse = internal_structural_power(pulse(t), pulse(t + 1e-2), p, g, Field(g.n_nodes(), 0.0), 1e-2);
        const double fine = internal_structural_power(pulse(t), pulse(t + 5e-3), p, g, Field(g.n_nodes(), 0.0), 5e-3);
        CHECK(std::abs(fine - fd) < std::abs(coarse - fd));
        CHECK(std::abs(coarse - fd) / std::abs(fine - fd) == doctest::Approx(2.0).epsilon(0.05));
    }
    SUBCASE("dt must be positive")
    {
        const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 1.0);
        CHECK_THROWS_AS(internal_structural_power(blank(g), blank(g), p, g, Field(g.n_nodes(), 0.0), 0.0),
                        InvalidArgument);
    }
}

TEST_CASE("pseudo fatigue energy")
{
    const Grid1D g(2.0, 10);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 0.6, 1.0);
    FieldState s = blank(g);
    s.fatigue.assign(g.n_nodes(), 4.0);
    CHECK(pseudo_fatigue_energy(s, p, g) == 0.0);

    s.phi.assign(g.n_nodes(), 1.0);
    s.fatigue.assign(g.n_nodes(), 0.0);
    CHECK(pseudo_fatigue_energy(s, p, g) == doctest::Approx(0.6 * 5.0 / 6.0 * 2.0));

    s.fatigue.assign(g.n_nodes(), 1.5 * 0.6);
    CHECK(pseudo_fatigue_energy(s, p, g) == doctest::Approx((0.6 * 5.0 / 6.0 - 0.9) * 2.0));
}

TEST_CASE("elastic free energy")
{
    const Grid1D g(1.0, 40);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 0.8, 2.0);
    FieldState s = blank(g);
    CHECK(elastic_free_energy(s, p, g) == 0.0);

    for (int i = 1; i < g.n_nodes() - 1; ++i)
        s.u[i] = 0.05 * std::sin(std::numbers::pi * g.node(i));
    Field virgin(g.n_nodes());
    for (int i = 0; i < g.n_nodes(); ++i) {
        const double ux = central(s.u, i, g.spacing());
        virgin[i] = 0.5 * 2.0 * ux * ux;
    }
    const double e_virgin = trapezoid(virgin, g.spacing());
    CHECK(elastic_free_energy(s, p, g) == doctest::Approx(e_virgin).epsilon(1e-13));

    s.fatigue.assign(g.n_nodes(), 0.37);
    CHECK(elastic_free_energy(s, p, g) - pseudo_fatigue_energy(s, p, g) ==
          doctest::Approx(e_virgin).epsilon(1e-13));

    s.phi.assign(g.n_nodes(), 1.0);
    s.fatigue.assign(g.n_nodes(), 0.0);
    CHECK(elastic_free_energy(s, p, g) == doctest::Approx(e_virgin + 0.8 * 5.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("dissipation_residual picks the worst report")
{
    CHECK(dissipation_residual(std::vector<EnergyReport>{}) == 0.0);
    std::vector<EnergyReport> r(3);
    r[0].dissipation_residual = 0.0;
    r[1].dissipation_residual = -2.0;
    r[2].dissipation_residual = 1.0;
    CHECK(dissipation_residual(r) == -2.0);
    std::vector<EnergyReport> still(4);
    CHECK(dissipation_residual(still) == 0.0);
}

TEST_CASE("frozen-phase elastic run closes the power balance exactly")
{
    const Grid1D g(1.0, 30);
    const MaterialParams p = MaterialParams::uniform(g, 1.0, 1.0, 1.0, 1.0);
    LoadProgram load;
    load.amplitude = 3.0;
    load.omega = 5.0;
    StepControls c;
    c.dt = 0.5 * stable_dt(p, g, PhaseScheme::frozen);
    c.t_end = 2.0;
    c.phase_scheme = PhaseScheme::frozen;
    const Field zero(g.n_nodes(), 0.0);
    const RunResult r = run(p, g, load, c, initial_state(g, zero, zero, zero));
    CHECK(std::abs(r.worst_dissipation_residual) <= 1e-10);
    CHECK(r.trajectory.back().free_energy > 0.0);
}

TEST_CASE("energy landscape")
{
    CHECK_THROWS_AS(energy_landscape(1.0, 0.0, 1), InvalidArgument);

    const auto two = energy_landscape(1.0, 0.0, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].phi == -0.2);
    CHECK(two[1].phi == 1.2);

    const auto flat = energy_landscape(2.0, 0.0, 281);
    CHECK(landscape_minimizer(flat) == 0.0);
    for (const auto& pt : flat)
        CHECK(pt.energy_density >= 0.0);

    const int samples = 1001;
    const double star = 2.0 - std::sqrt(3.0);
    CHECK(std::abs(landscape_minimizer(energy_landscape(2.0, 1.0, samples)) - star) <= 2.0 / samples);
    CHECK(landscape_minimizer(energy_landscape(2.0, 3.0, samples)) == 1.0);
    CHECK(landscape_minimizer(energy_landscape(2.0, 5.0, samples)) == 1.0);

    const auto curve = energy_landscape(2.0, 0.7, 15);
    for (const auto& pt : curve) {
        const double p = std::clamp(pt.phi, 0.0, 1.0);
        CHECK(pt.energy_density == doctest::Approx(2.0 * (p * p - p * p * p / 6.0) - 0.7 * p));
    }
}

TEST_CASE("landscape minimizer is nondecreasing in fatigue")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> f0d(0.1, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double F0 = f0d(rng);
        std::uniform_real_distribution<double> fd(0.0, 3.0 * F0);
        std::vector<double> fat(20);
        for (double& f : fat)
            f = fd(rng);
        std::sort(fat.begin(), fat.end());
        double prev = -1.0;
        for (double f : fat) {
            const double m = landscape_minimizer(energy_landscape(F0, f, 401));
            CHECK(m >= prev);
            prev = m;
        }
    }
}
