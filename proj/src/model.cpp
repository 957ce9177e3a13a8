#include "fatigue_pf/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fatigue_pf/errors.hpp"

namespace fpf {

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&] {
          std::string joined;
          for (const auto& e : errors) {
              if (!joined.empty())
                  joined += "; ";
              joined += e;
          }
          return joined;
      }()),
      errors_(std::move(errors))
{
}

Grid1D::Grid1D(double length, int n_cells) : length_(length), n_cells_(n_cells)
{
    if (!(std::isfinite(length) && length > 0.0))
        throw InvalidArgument("grid length must be finite and > 0");
    if (n_cells < 4)
        throw InvalidArgument("grid needs at least 4 cells");
}

Field Grid1D::nodes() const
{
    Field x(n_nodes());
    for (int i = 0; i < n_nodes(); ++i)
        x[i] = node(i);
    return x;
}

MaterialParams MaterialParams::uniform(const Grid1D& grid, double rho, double kappa, double F0,
                                       double a)
{
    const auto n = static_cast<std::size_t>(grid.n_cells());
    return MaterialParams{Field(n, rho), Field(n, kappa), Field(n, F0), Field(n, a), std::nullopt};
}

Field cells_to_nodes(std::span<const double> cells)
{
    const std::size_t nc = cells.size();
    Field nodal(nc + 1);
    nodal[0] = cells[0];
    nodal[nc] = cells[nc - 1];
    for (std::size_t i = 1; i < nc; ++i)
        nodal[i] = 0.5 * (cells[i - 1] + cells[i]);
    return nodal;
}

NodalCoefficients::NodalCoefficients(const MaterialParams& params)
    : rho(cells_to_nodes(params.rho)), F0(cells_to_nodes(params.F0)), a(cells_to_nodes(params.a))
{
    Field inv(params.kappa.size());
    std::transform(params.kappa.begin(), params.kappa.end(), inv.begin(),
                   [](double k) { return 1.0 / k; });
    inv_kappa = cells_to_nodes(inv);
}

double LoadProgram::shape_at(double x, double length) const
{
    switch (shape) {
    case LoadShape::uniform:
        return 1.0;
    case LoadShape::half_sine:
        return std::sin(std::numbers::pi * x / length);
    case LoadShape::gaussian: {
        // Peak of the profile on [0, L] sits at the clamped centre.
        const double peak_x = std::clamp(center, 0.0, length);
        const auto g = [&](double s) {
            const double d = (s - center) / width;
            return std::exp(-0.5 * d * d);
        };
        return g(x) / g(peak_x);
    }
    }
    return 0.0;
}

double LoadProgram::body_force(double x, double t, double length) const
{
    return amplitude * shape_at(x, length) * std::sin(omega * t);
}

Field LoadProgram::body_force(const Grid1D& grid, double t) const
{
    Field b(grid.n_nodes());
    const double s = amplitude * std::sin(omega * t);
    for (int i = 0; i < grid.n_nodes(); ++i)
        b[i] = s * shape_at(grid.node(i), grid.length());
    return b;
}

namespace {

void check_cells(const Field& f, const char* name, bool allow_zero, std::size_t n,
                 std::vector<std::string>& out)
{
    if (f.size() != n) {
        out.push_back(std::string(name) + " must have one value per cell");
        return;
    }
    for (double v : f) {
        if (!std::isfinite(v)) {
            out.push_back(std::string(name) + " must be finite");
            return;
        }
    }
    for (double v : f) {
        if (allow_zero ? v < 0.0 : v <= 0.0) {
            out.push_back(std::string(name) + (allow_zero ? " must be >= 0" : " must be > 0"));
            return;
        }
    }
}

bool all_finite(const Field& f)
{
    return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
}

} // namespace

std::vector<std::string> validate(const MaterialParams& params, const Grid1D& grid,
                                  const FieldState& state)
{
    std::vector<std::string> out;
    const auto nc = static_cast<std::size_t>(grid.n_cells());
    const auto nn = static_cast<std::size_t>(grid.n_nodes());

    check_cells(params.rho, "rho", false, nc, out);
    check_cells(params.kappa, "kappa", false, nc, out);
    check_cells(params.F0, "F0", true, nc, out);
    check_cells(params.a, "a", false, nc, out);

    if (params.thermal) {
        const auto& th = *params.thermal;
        if (!(std::isfinite(th.c) && th.c > 0.0))
            out.emplace_back("c must be > 0");
        if (!(std::isfinite(th.k_q) && th.k_q >= 0.0))
            out.emplace_back("k_q must be >= 0");
        if (!(std::isfinite(th.varkappa) && th.varkappa >= 0.0))
            out.emplace_back("varkappa must be >= 0");
        if (!(std::isfinite(th.theta_ref) && th.theta_ref > 0.0))
            out.emplace_back("theta_ref must be > 0");
    }

    const std::pair<const Field*, const char*> arrays[] = {
        {&state.u, "u"}, {&state.v, "v"}, {&state.phi, "phi"}, {&state.fatigue, "fatigue"},
        {&state.hist_H, "hist_H"}};
    for (const auto& [f, name] : arrays) {
        if (f->size() != nn)
            out.push_back(std::string(name) + " must have one value per node");
        else if (!all_finite(*f))
            out.push_back(std::string(name) + " must be finite");
    }
    if (!std::isfinite(state.t))
        out.emplace_back("t must be finite");

    if (state.u.size() == nn && (state.u.front() != 0.0 || state.u.back() != 0.0))
        out.emplace_back("boundary displacement must vanish");

    if (params.thermal && !state.has_theta())
        out.emplace_back("thermal material requires a temperature field");
    if (state.has_theta()) {
        if (state.theta.size() != nn)
            out.emplace_back("theta must have one value per node");
        else if (!all_finite(state.theta))
            out.emplace_back("theta must be finite");
        else if (std::any_of(state.theta.begin(), state.theta.end(),
                             [](double th) { return th <= 0.0; }))
            out.emplace_back("theta must be > 0");
    }
    return out;
}

std::vector<std::string> validate(const LoadProgram& load)
{
    std::vector<std::string> out;
    if (!std::isfinite(load.amplitude))
        out.emplace_back("amplitude must be finite");
    if (!(std::isfinite(load.omega) && load.omega >= 0.0))
        out.emplace_back("omega must be >= 0");
    if (load.shape == LoadShape::gaussian && !(std::isfinite(load.width) && load.width > 0.0))
        out.emplace_back("width must be > 0");
    if (load.shape == LoadShape::gaussian && !std::isfinite(load.center))
        out.emplace_back("center must be finite");
    if (!std::isfinite(load.heat_supply))
        out.emplace_back("heat_supply must be finite");
    return out;
}

FieldState initial_state(const Grid1D& grid, std::span<const double> u0,
                         std::span<const double> v0, std::span<const double> phi0,
                         std::optional<std::span<const double>> theta0)
{
    const auto nn = static_cast<std::size_t>(grid.n_nodes());
    if (u0.size() != nn || v0.size() != nn || phi0.size() != nn ||
        (theta0 && theta0->size() != nn))
        throw InvalidArgument("initial fields must have one value per node");

    for (double p : phi0) {
        if (!(p >= 0.0 && p <= 1.0))
            throw PreconditionViolation("initial phase must lie in [0, 1]");
    }
    if (u0.front() != 0.0 || u0.back() != 0.0)
        throw PreconditionViolation("initial displacement must vanish on the boundary");
    if (theta0) {
        for (double th : *theta0) {
            if (!(std::isfinite(th) && th > 0.0))
                throw PreconditionViolation("initial temperature must be > 0");
        }
    }

    FieldState s;
    s.u.assign(u0.begin(), u0.end());
    s.v.assign(v0.begin(), v0.end());
    s.phi.assign(phi0.begin(), phi0.end());
    s.fatigue.assign(nn, 0.0);
    s.hist_H.assign(nn, 0.0);
    if (theta0)
        s.theta.assign(theta0->begin(), theta0->end());
    return s;
}

} // namespace fpf
