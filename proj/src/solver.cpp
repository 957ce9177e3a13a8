#include "fatigue_pf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fatigue_pf/energy.hpp"
#include "fatigue_pf/errors.hpp"
#include "fatigue_pf/fatigue.hpp"
#include "fatigue_pf/potentials.hpp"

namespace fpf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(const Field& f)
{
    return std::all_of(f.begin(), f.end(), [](double x) { return std::isfinite(x); });
}

// Sum of the conductances seen by node i for a zero-flux Laplacian; the half control
// volume at each end doubles its single face.
double face_conductance_sum(std::span<const double> face_k, int i, int n_nodes)
{
    if (i == 0)
        return 2.0 * face_k[0];
    if (i == n_nodes - 1)
        return 2.0 * face_k[n_nodes - 2];
    return face_k[i - 1] + face_k[i];
}

// Zero-flux Laplacian of f with cell conductances face_k (one per cell).
void neumann_laplacian(std::span<const double> f, std::span<const double> face_k, double h,
                       Field& out)
{
    const std::size_t n = f.size();
    const double inv_h2 = 1.0 / (h * h);
    out.resize(n);
    out[0] = 2.0 * face_k[0] * (f[1] - f[0]) * inv_h2;
    out[n - 1] = 2.0 * face_k[n - 2] * (f[n - 2] - f[n - 1]) * inv_h2;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = (face_k[i] * (f[i + 1] - f[i]) - face_k[i - 1] * (f[i] - f[i - 1])) * inv_h2;
}

Field inverse(std::span<const double> f)
{
    Field out(f.size());
    std::transform(f.begin(), f.end(), out.begin(), [](double x) { return 1.0 / x; });
    return out;
}

// Cell stress (1 - clamp phi)^2 a u_x + varkappa theta, degradation averaged over the
// two end nodes of the cell.
Field cell_stress(const Field& u, const Field& phi, const Field& theta,
                  const MaterialParams& params, double h)
{
    const std::size_t nc = params.a.size();
    Field sigma(nc);
    const double varkappa = params.thermal ? params.thermal->varkappa : 0.0;
    for (std::size_t j = 0; j < nc; ++j) {
        const double g = 0.5 * (degradation(phi[j]) + degradation(phi[j + 1]));
        sigma[j] = g * params.a[j] * (u[j + 1] - u[j]) / h;
        if (!theta.empty() && varkappa != 0.0)
            sigma[j] += varkappa * 0.5 * (theta[j] + theta[j + 1]);
    }
    return sigma;
}

Field acceleration(const Field& u, const Field& phi, const Field& theta,
                   const MaterialParams& params, const Field& rho_nodal, const Grid1D& grid,
                   const LoadProgram& load, double t)
{
    const double h = grid.spacing();
    const Field sigma = cell_stress(u, phi, theta, params, h);
    const int n = grid.n_nodes();
    Field acc(n, 0.0);
    const double s = load.amplitude * std::sin(load.omega * t);
    for (int i = 1; i < n - 1; ++i) {
        const double b = s * load.shape_at(grid.node(i), grid.length());
        acc[i] = (sigma[i] - sigma[i - 1]) / (h * rho_nodal[i]) + b;
    }
    return acc;
}

// Thomas algorithm for (diag - lower/upper couplings) x = rhs.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, Field& rhs)
{
    const std::size_t n = diag.size();
    Field c(n), d(n);
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] - lower[i] * c[i - 1];
        c[i] = (i + 1 < n) ? upper[i] / m : 0.0;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / m;
    }
    rhs[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = d[i] - c[i] * rhs[i + 1];
}

// Reaction rate (fatigue - F0 G'(phi)) of the phase equation, i.e. -F'(phi) fatigue - F0 G'(phi).
double reaction(double phi, double fatigue, double F0)
{
    return -dF(phi) * fatigue - F0 * dG(phi);
}

} // namespace

double stable_dt(const MaterialParams& params, const Grid1D& grid)
{
    return stable_dt(params, grid, PhaseScheme::explicit_euler);
}

double stable_dt(const MaterialParams& params, const Grid1D& grid, PhaseScheme scheme)
{
    const double h = grid.spacing();
    const int n = grid.n_nodes();
    const NodalCoefficients k(params);
    const Field inv_kappa = inverse(params.kappa);

    double dt = kInf;
    for (int i = 0; i < n; ++i) {
        if (scheme == PhaseScheme::explicit_euler)
            dt = std::min(dt, k.rho[i] * h * h / face_conductance_sum(inv_kappa, i, n));
        if (scheme != PhaseScheme::frozen && k.F0[i] > 0.0)
            dt = std::min(dt, k.rho[i] / (2.0 * k.F0[i]));
        if (i > 0 && i < n - 1) {
            const double a_mean = 0.5 * (params.a[i - 1] + params.a[i]);
            dt = std::min(dt, h * std::sqrt(k.rho[i] / a_mean));
        }
        if (params.thermal && params.thermal->k_q > 0.0) {
            dt = std::min(dt, k.rho[i] * params.thermal->c * h * h / (2.0 * params.thermal->k_q));
        }
    }
    return dt;
}

StepPlan plan_steps(double dt, double t_end)
{
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidArgument("time step must be finite and > 0");
    if (!(t_end >= 0.0) || !std::isfinite(t_end))
        throw InvalidArgument("t_end must be finite and >= 0");
    if (t_end == 0.0)
        return {0, dt};
    // Tolerate round-off so that t_end / dt = 99.99999999999 still plans 100 steps.
    const double ratio = t_end / dt;
    long steps = static_cast<long>(std::ceil(ratio - 1e-9 * ratio));
    steps = std::max(steps, 1L);
    return {steps, t_end / static_cast<double>(steps)};
}

FieldState step_momentum(const FieldState& state, const MaterialParams& params,
                         const Grid1D& grid, const LoadProgram& load, double dt)
{
    if (!(dt > 0.0))
        throw InvalidArgument("step_momentum: dt must be > 0");
    const Field rho = cells_to_nodes(params.rho);
    const int n = grid.n_nodes();
    FieldState next = state;

    const Field acc0 = acceleration(state.u, state.phi, state.theta, params, rho, grid, load, state.t);
    Field v_half(n);
    for (int i = 0; i < n; ++i)
        v_half[i] = state.v[i] + 0.5 * dt * acc0[i];
    for (int i = 0; i < n; ++i)
        next.u[i] = state.u[i] + dt * v_half[i];
    next.u.front() = next.u.back() = 0.0;
    v_half.front() = v_half.back() = 0.0;

    next.t = state.t + dt;
    const Field acc1 = acceleration(next.u, state.phi, state.theta, params, rho, grid, load, next.t);
    for (int i = 0; i < n; ++i)
        next.v[i] = v_half[i] + 0.5 * dt * acc1[i];
    next.v.front() = next.v.back() = 0.0;

    if (!all_finite(next.u) || !all_finite(next.v))
        throw DivergenceError("momentum update produced a non-finite value", next.t);
    return next;
}

FieldState step_phase(const FieldState& state, const MaterialParams& params, const Grid1D& grid,
                      double dt, PhaseScheme scheme)
{
    if (!(dt > 0.0))
        throw InvalidArgument("step_phase: dt must be > 0");
    if (scheme == PhaseScheme::frozen)
        return state;

    const double h = grid.spacing();
    const int n = grid.n_nodes();
    const NodalCoefficients k(params);
    const Field face_k = inverse(params.kappa);
    FieldState next = state;

    if (scheme == PhaseScheme::explicit_euler) {
        Field lap;
        neumann_laplacian(state.phi, face_k, h, lap);
        for (int i = 0; i < n; ++i) {
            next.phi[i] = state.phi[i] +
                          dt / k.rho[i] * (lap[i] + reaction(state.phi[i], state.fatigue[i], k.F0[i]));
        }
    } else {
        // Reaction substep. The clamped reaction vanishes outside [0,1], so a node that
        // would be carried across 0 or 1 stops at the breakpoint, as the exact solution of
        // the piecewise ODE does.
        Field rhs(n);
        for (int i = 0; i < n; ++i) {
            const double p = state.phi[i];
            double q = p + dt / k.rho[i] * reaction(p, state.fatigue[i], k.F0[i]);
            if (p >= 0.0 && p <= 1.0)
                q = std::clamp(q, 0.0, 1.0);
            rhs[i] = k.rho[i] * q / dt;
        }
        // Backward Euler diffusion: (rho/dt) phi' - L phi' = (rho/dt) q.
        const double inv_h2 = 1.0 / (h * h);
        Field lower(n, 0.0), diag(n), upper(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double left = 0.0, right = 0.0;
            if (i == 0) {
                right = 2.0 * face_k[0] * inv_h2;
            } else if (i == n - 1) {
                left = 2.0 * face_k[n - 2] * inv_h2;
            } else {
                left = face_k[i - 1] * inv_h2;
                right = face_k[i] * inv_h2;
            }
            lower[i] = -left;
            upper[i] = -right;
            diag[i] = k.rho[i] / dt + left + right;
        }
        solve_tridiagonal(lower, diag, upper, rhs);
        next.phi = std::move(rhs);
    }

    if (!all_finite(next.phi))
        throw DivergenceError("phase update produced a non-finite value", state.t);

    // History of the damage-rate weighted strain energy, with the strain of this state.
    const Field ux = nodal_gradient(state.u, h);
    for (int i = 0; i < n; ++i) {
        const double dp = clamp_phase(next.phi[i]) - clamp_phase(state.phi[i]);
        next.hist_H[i] += dp * k.a[i] * ux[i] * ux[i];
    }
    return next;
}

FieldState step_heat(const FieldState& state, std::span<const double> phi_old,
                     const MaterialParams& params, const Grid1D& grid, const LoadProgram& load,
                     double dt)
{
    if (!(dt > 0.0))
        throw InvalidArgument("step_heat: dt must be > 0");
    if (!params.thermal)
        throw InvalidArgument("step_heat: material has no thermal constants");
    if (!state.has_theta())
        throw InvalidArgument("step_heat: state has no temperature field");
    if (phi_old.size() != state.phi.size())
        throw InvalidArgument("step_heat: previous phase must be nodal");
    for (double th : state.theta) {
        if (!(th > 0.0))
            throw SingularTemperature("non-positive absolute temperature", state.t);
    }

    const auto& th = *params.thermal;
    const double h = grid.spacing();
    const int n = grid.n_nodes();
    const Field rho = cells_to_nodes(params.rho);
    const Field face_k(static_cast<std::size_t>(grid.n_cells()), th.k_q);
    Field lap;
    neumann_laplacian(state.theta, face_k, h, lap);

    FieldState next = state;
    for (int i = 0; i < n; ++i) {
        const double rate = (state.phi[i] - phi_old[i]) / dt;
        const double F_rate = (potential_F(state.phi[i]) - potential_F(phi_old[i])) / dt;
        const double source = lap[i] + rho[i] * rate * rate + state.fatigue[i] * F_rate +
                              rho[i] * load.heat_supply;
        next.theta[i] = state.theta[i] + dt / (rho[i] * th.c) * source;
    }
    if (!all_finite(next.theta))
        throw DivergenceError("heat update produced a non-finite value", state.t);
    for (double t : next.theta) {
        if (!(t > 0.0))
            throw SingularTemperature("heat update drove the temperature to <= 0", state.t);
    }
    return next;
}

namespace {

Field fatigue_power(const FieldState& s, const MaterialParams& params, const Grid1D& grid,
                    const RunOptions& options)
{
    if (options.thermal)
        return thermal_fatigue_density(s, params, grid);
    Field p = mech_power_density(s, params, grid);
    if (options.isothermal_temperature != 1.0) {
        for (double& x : p)
            x /= options.isothermal_temperature;
    }
    return p;
}

Sample make_sample(const FieldState& s, const MaterialParams& params, const Grid1D& grid,
                   int probe, double free_energy)
{
    Sample out;
    out.t = s.t;
    const auto [mn, mx] = std::minmax_element(s.phi.begin(), s.phi.end());
    out.phi_min = *mn;
    out.phi_max = *mx;
    out.phi_probe = s.phi[probe];
    out.fatigue_probe = s.fatigue[probe];
    out.kinetic_energy = kinetic_energy(s, params, grid);
    out.free_energy = free_energy;
    out.psi_F = pseudo_fatigue_energy(s, params, grid);
    out.boundary_stress =
        cell_stress(s.u, s.phi, s.theta, params, grid.spacing()).front();
    return out;
}

} // namespace

RunResult run(const MaterialParams& params, const Grid1D& grid, const LoadProgram& load,
              const StepControls& controls, const FieldState& initial, const RunOptions& options)
{
    auto problems = validate(params, grid, initial);
    const auto load_problems = validate(load);
    problems.insert(problems.end(), load_problems.begin(), load_problems.end());
    if (options.thermal && !params.thermal)
        problems.emplace_back("thermal run requires thermal material constants");
    if (options.probe_node < 0 || options.probe_node >= grid.n_nodes())
        problems.emplace_back("probe node outside the grid");
    if (controls.sample_every < 1)
        problems.emplace_back("sample_every must be >= 1");
    if (!(controls.cfl_safety > 0.0 && controls.cfl_safety <= 1.0))
        problems.emplace_back("cfl_safety must lie in (0, 1]");
    if (!(options.isothermal_temperature > 0.0))
        problems.emplace_back("isothermal temperature must be > 0");
    if (!problems.empty())
        throw ConfigError(problems);

    const StepPlan plan = plan_steps(controls.dt, controls.t_end);
    const double dt = plan.dt;
    const double limit = stable_dt(params, grid, controls.phase_scheme) * controls.cfl_safety;
    if (dt > limit * (1.0 + 1e-12))
        throw InvalidArgument("time step " + std::to_string(dt) + " exceeds the stability limit " +
                              std::to_string(limit));

    FieldState state = initial;
    if (!options.thermal)
        state.theta.clear();
    const double t0 = state.t;

    RunResult result;
    double psi = elastic_free_energy(state, params, grid);
    result.trajectory.push_back(make_sample(state, params, grid, options.probe_node, psi));
    if (options.record_fields)
        result.fields.push_back(state);
    result.worst_dissipation_residual = plan.steps > 0 ? kInf : 0.0;

    for (long n = 0; n < plan.steps; ++n) {
        const Field p_old = fatigue_power(state, params, grid, options);
        FieldState mech = step_momentum(state, params, grid, load, dt);
        mech.t = t0 + static_cast<double>(n + 1) * dt;
        const Field p_new = fatigue_power(mech, params, grid, options);
        mech.fatigue = advance_fatigue(mech, p_old, p_new, dt);

        FieldState next = step_phase(mech, params, grid, dt, controls.phase_scheme);
        if (options.thermal)
            next = step_heat(next, mech.phi, params, grid, load, dt);

        // Power balance over the step, rates as differences of the two end states.
        FieldState mid = state;
        Field d_fatigue(state.fatigue.size());
        for (std::size_t i = 0; i < mid.u.size(); ++i) {
            mid.u[i] = 0.5 * (state.u[i] + next.u[i]);
            mid.v[i] = (next.u[i] - state.u[i]) / dt;
            d_fatigue[i] = (next.fatigue[i] - state.fatigue[i]) / dt;
        }
        const double P_m = internal_mechanical_power(mid, params, grid, d_fatigue);
        const double P_s = internal_structural_power(state, next, params, grid, next.fatigue, dt);
        const double psi_next = elastic_free_energy(next, params, grid);
        const double residual = P_m + P_s - (psi_next - psi) / dt;
        result.worst_dissipation_residual = std::min(result.worst_dissipation_residual, residual);

        state = std::move(next);
        psi = psi_next;

        if ((n + 1) % controls.sample_every == 0 || n + 1 == plan.steps) {
            Sample s = make_sample(state, params, grid, options.probe_node, psi);
            s.P_m = P_m;
            s.P_s = P_s;
            s.dissipation_residual = residual;
            result.trajectory.push_back(s);
            if (options.record_fields)
                result.fields.push_back(state);
        }
    }
    result.steps = plan.steps;
    result.final_state = std::move(state);
    return result;
}

} // namespace fpf
