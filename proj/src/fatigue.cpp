#include "fatigue_pf/fatigue.hpp"

#include <cmath>

#include "fatigue_pf/errors.hpp"
#include "fatigue_pf/potentials.hpp"

namespace fpf {

Field nodal_gradient(std::span<const double> f, double h)
{
    const std::size_t n = f.size();
    Field g(n);
    g[0] = (f[1] - f[0]) / h;
    g[n - 1] = (f[n - 1] - f[n - 2]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i)
        g[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    return g;
}

Field mech_power_density(const FieldState& state, const MaterialParams& params,
                         const Grid1D& grid)
{
    const double h = grid.spacing();
    const Field a = cells_to_nodes(params.a);
    const Field ux = nodal_gradient(state.u, h);
    const Field vx = nodal_gradient(state.v, h);
    Field p(ux.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = (1.0 - clamp_phase(state.phi[i])) * a[i] * ux[i] * vx[i];
    return p;
}

Field advance_fatigue(const FieldState& state, std::span<const double> p_old,
                      std::span<const double> p_new, double dt)
{
    if (!(dt > 0.0))
        throw InvalidArgument("advance_fatigue: dt must be > 0");
    if (p_old.size() != state.fatigue.size() || p_new.size() != state.fatigue.size())
        throw InvalidArgument("advance_fatigue: power fields must match the node count");
    Field out(state.fatigue);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += 0.5 * dt * (p_old[i] + p_new[i]);
    return out;
}

Field fatigue_elastic_closed_form(const FieldState& state, const MaterialParams& params,
                                  const Grid1D& grid)
{
    const Field a = cells_to_nodes(params.a);
    const Field ux = nodal_gradient(state.u, grid.spacing());
    Field out(ux.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double w = 1.0 - clamp_phase(state.phi[i]);
        out[i] = 0.5 * w * a[i] * ux[i] * ux[i] + 0.5 * state.hist_H[i];
    }
    return out;
}

namespace {

void require_positive_theta(const FieldState& state)
{
    if (!state.has_theta())
        throw InvalidArgument("thermal fatigue needs a temperature field");
    for (double th : state.theta) {
        if (!(th > 0.0))
            throw SingularTemperature("non-positive absolute temperature", state.t);
    }
}

double conductivity(const MaterialParams& params)
{
    if (!params.thermal)
        throw InvalidArgument("thermal fatigue needs thermal material constants");
    return params.thermal->k_q;
}

} // namespace

Field heat_flux_fatigue_density(const FieldState& state, const MaterialParams& params,
                                const Grid1D& grid)
{
    require_positive_theta(state);
    const double k_q = conductivity(params);
    const Field tx = nodal_gradient(state.theta, grid.spacing());
    Field out(tx.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double th = state.theta[i];
        // q . grad(1/theta) with q = -k_q theta_x and grad(1/theta) = -theta_x / theta^2
        out[i] = (1.0 - clamp_phase(state.phi[i])) * k_q * tx[i] * tx[i] / (th * th);
    }
    return out;
}

Field thermal_fatigue_density(const FieldState& state, const MaterialParams& params,
                              const Grid1D& grid)
{
    Field out = mech_power_density(state, params, grid);
    const Field flux = heat_flux_fatigue_density(state, params, grid);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = out[i] / state.theta[i] + flux[i];
    return out;
}

} // namespace fpf
