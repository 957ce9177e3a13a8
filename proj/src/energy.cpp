#include "fatigue_pf/energy.hpp"

#include <algorithm>
#include <limits>

#include "fatigue_pf/errors.hpp"
#include "fatigue_pf/fatigue.hpp"
#include "fatigue_pf/potentials.hpp"

namespace fpf {

double integrate(std::span<const double> nodal, double h)
{
    if (nodal.size() < 2)
        return 0.0;
    double sum = 0.5 * (nodal.front() + nodal.back());
    for (std::size_t i = 1; i + 1 < nodal.size(); ++i)
        sum += nodal[i];
    return sum * h;
}

double kinetic_energy(const FieldState& state, const MaterialParams& params, const Grid1D& grid)
{
    const Field rho = cells_to_nodes(params.rho);
    Field e(state.v.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = 0.5 * rho[i] * state.v[i] * state.v[i];
    return integrate(e, grid.spacing());
}

double internal_mechanical_power(const FieldState& state, const MaterialParams& params,
                                 const Grid1D& grid, std::span<const double> d_fatigue_dt)
{
    if (d_fatigue_dt.size() != state.phi.size())
        throw InvalidArgument("internal_mechanical_power: fatigue rate must be nodal");
    const double h = grid.spacing();
    const Field a = cells_to_nodes(params.a);
    const Field ux = nodal_gradient(state.u, h);
    const Field vx = nodal_gradient(state.v, h);
    Field density(ux.size());
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double p = clamp_phase(state.phi[i]);
        density[i] = (1.0 - p) * a[i] * ux[i] * vx[i] - p * d_fatigue_dt[i];
    }
    return integrate(density, h);
}

double internal_structural_power(const FieldState& before, const FieldState& after,
                                 const MaterialParams& params, const Grid1D& grid,
                                 std::span<const double> fatigue, double dt)
{
    if (!(dt > 0.0))
        throw InvalidArgument("internal_structural_power: dt must be > 0");
    if (fatigue.size() != before.phi.size())
        throw InvalidArgument("internal_structural_power: fatigue must be nodal");
    const double h = grid.spacing();
    const NodalCoefficients k(params);
    const Field gx0 = nodal_gradient(before.phi, h);
    const Field gx1 = nodal_gradient(after.phi, h);
    Field density(gx0.size());
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double rate = (after.phi[i] - before.phi[i]) / dt;
        const double grad_rate = 0.5 * k.inv_kappa[i] * (gx1[i] * gx1[i] - gx0[i] * gx0[i]) / dt;
        const double G_rate = (potential_G(after.phi[i]) - potential_G(before.phi[i])) / dt;
        const double F_rate = (potential_F(after.phi[i]) - potential_F(before.phi[i])) / dt;
        density[i] = k.rho[i] * rate * rate + grad_rate + k.F0[i] * G_rate + fatigue[i] * F_rate;
    }
    return integrate(density, h);
}

double pseudo_fatigue_energy(const FieldState& state, const MaterialParams& params,
                             const Grid1D& grid)
{
    const double h = grid.spacing();
    const NodalCoefficients k(params);
    const Field gx = nodal_gradient(state.phi, h);
    Field density(gx.size());
    for (std::size_t i = 0; i < density.size(); ++i) {
        density[i] = 0.5 * k.inv_kappa[i] * gx[i] * gx[i] + k.F0[i] * potential_G(state.phi[i]) +
                     state.fatigue[i] * potential_F(state.phi[i]);
    }
    return integrate(density, h);
}

double elastic_free_energy(const FieldState& state, const MaterialParams& params,
                           const Grid1D& grid)
{
    const double h = grid.spacing();
    const NodalCoefficients k(params);
    const Field ux = nodal_gradient(state.u, h);
    const Field gx = nodal_gradient(state.phi, h);
    Field density(ux.size());
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double p = clamp_phase(state.phi[i]);
        density[i] = 0.5 * ((1.0 - p + p * p) * k.a[i] * ux[i] * ux[i] - p * state.hist_H[i] +
                            k.inv_kappa[i] * gx[i] * gx[i] + 2.0 * k.F0[i] * potential_G(state.phi[i]));
    }
    return integrate(density, h);
}

double dissipation_residual(std::span<const EnergyReport> reports)
{
    if (reports.empty())
        return 0.0;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& r : reports)
        worst = std::min(worst, r.dissipation_residual);
    return worst;
}

std::vector<LandscapePoint> energy_landscape(double F0, double fatigue, int samples)
{
    if (samples < 2)
        throw InvalidArgument("energy_landscape: samples must be >= 2");
    constexpr double lo = -0.2;
    constexpr double hi = 1.2;
    std::vector<LandscapePoint> curve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double phi = (k == samples - 1) ? hi : lo + (hi - lo) * k / (samples - 1);
        curve[k] = {phi, F0 * potential_G(phi) + fatigue * potential_F(phi)};
    }
    return curve;
}

double landscape_minimizer(std::span<const LandscapePoint> curve)
{
    if (curve.empty())
        throw InvalidArgument("landscape_minimizer: empty curve");
    auto best = std::min_element(curve.begin(), curve.end(),
                                 [](const LandscapePoint& l, const LandscapePoint& r) {
                                     return l.energy_density < r.energy_density;
                                 });
    return clamp_phase(best->phi);
}

} // namespace fpf
