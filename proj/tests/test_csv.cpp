#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "fatigue_pf/csv.hpp"
#include "fatigue_pf/errors.hpp"

using namespace fpf;

namespace {

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("format_number round-trips exactly")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng));
        double back = 0.0;
        REQUIRE(parse_number(format_number(x), back));
        CHECK(back == x);
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(3.0) == "3");
}

TEST_CASE("parse_number is strict")
{
    double x = 0.0;
    CHECK(parse_number("+2.5", x));
    CHECK(x == 2.5);
    CHECK(parse_number("-1e-3", x));
    CHECK(x == -1e-3);
    CHECK_FALSE(parse_number("", x));
    CHECK_FALSE(parse_number("1.0abc", x));
    CHECK_FALSE(parse_number(" 1", x));
    CHECK_FALSE(parse_number("nan", x));
    CHECK_FALSE(parse_number("inf", x));
    CHECK_FALSE(parse_number("1e999", x));
}

TEST_CASE("parse_number_list")
{
    CHECK(parse_number_list("1,2, 3.5 ") == std::vector<double>{1.0, 2.0, 3.5});
    CHECK(parse_number_list("7") == std::vector<double>{7.0});
    CHECK_THROWS_AS(parse_number_list("1,,2"), InvalidArgument);
    CHECK_THROWS_AS(parse_number_list("1,x"), InvalidArgument);
    CHECK_THROWS_AS(parse_number_list(""), InvalidArgument);
}

TEST_CASE("trajectory CSV")
{
    Trajectory tr(2);
    tr[1].t = 0.25;
    tr[1].phi_max = 0.5;
    tr[1].dissipation_residual = -1.0;
    std::ostringstream out;
    write_trajectory(out, tr);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] ==
          "t,phi_max,phi_min,phi_probe,fatigue_probe,kinetic_energy,free_energy,psi_F,P_m,P_s,"
          "dissipation_residual");
    CHECK(lines[1] == "0,0,0,0,0,0,0,0,0,0,0");
    CHECK(lines[2] == "0.25,0.5,0,0,0,0,0,0,0,0,-1");
}

TEST_CASE("field snapshots CSV")
{
    const Grid1D g(1.0, 4);
    const Field zero(g.n_nodes(), 0.0);
    FieldState s = initial_state(g, zero, zero, zero);
    s.phi[2] = 0.75;
    std::vector<FieldState> snaps{s, s};
    snaps[1].t = 1.0;

    std::ostringstream out;
    write_fields(out, snaps, g);
    auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 1 + 2 * 5);
    CHECK(lines[0] == "t,x,u,v,phi,fatigue,hist_H");
    CHECK(lines[3] == "0,0.5,0,0,0.75,0,0");
    CHECK(lines[6] == "1,0,0,0,0,0,0");

    for (auto& snap : snaps)
        snap.theta.assign(g.n_nodes(), 2.0);
    std::ostringstream th;
    write_fields(th, snaps, g);
    lines = lines_of(th.str());
    CHECK(lines[0] == "t,x,u,v,phi,fatigue,hist_H,theta");
    CHECK(lines[1] == "0,0,0,0,0,0,0,2");
}

TEST_CASE("landscape CSV with two samples")
{
    std::ostringstream out;
    write_landscape(out, energy_landscape(1.0, 0.0, 2));
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "phi,energy_density");
    CHECK(lines[1] == "-0.2,0");
    CHECK(lines[2].rfind("1.2,", 0) == 0);
    double e = 0.0;
    REQUIRE(parse_number(lines[2].substr(4), e));
    CHECK(e == doctest::Approx(5.0 / 6.0));
}
