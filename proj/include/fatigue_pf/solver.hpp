#pragma once

#include <vector>

#include "fatigue_pf/model.hpp"

namespace fpf {

enum class PhaseScheme {
    explicit_euler,   // forward Euler for diffusion and reactions
    semi_implicit,    // backward Euler diffusion, event-limited explicit reactions
    frozen,           // phase held at its initial value (pure elastodynamics audits)
};

struct StepControls {
    double dt = 0.0;
    double t_end = 0.0;
    double cfl_safety = 0.5;
    PhaseScheme phase_scheme = PhaseScheme::explicit_euler;
    int sample_every = 1;

    friend bool operator==(const StepControls&, const StepControls&) = default;
};

struct Sample {
    double t = 0.0;
    double phi_max = 0.0;
    double phi_min = 0.0;
    double phi_probe = 0.0;
    double fatigue_probe = 0.0;
    double kinetic_energy = 0.0;
    double free_energy = 0.0;
    double psi_F = 0.0;
    double P_m = 0.0;
    double P_s = 0.0;
    double dissipation_residual = 0.0;
    double boundary_stress = 0.0;

    friend bool operator==(const Sample&, const Sample&) = default;
};

using Trajectory = std::vector<Sample>;

struct RunOptions {
    bool thermal = false;
    int probe_node = 0;
    bool record_fields = false;
    /// Isothermal runs divide the fatigue power by this temperature; 1 keeps the
    /// plain mechanical fatigue integral.
    double isothermal_temperature = 1.0;
};

struct RunResult {
    Trajectory trajectory;
    FieldState final_state;
    std::vector<FieldState> fields;  // filled at sample times when record_fields is set
    double worst_dissipation_residual = 0.0;  // minimum over every step, not only samples
    long steps = 0;
};

/// Largest stable explicit step: min over nodes of the phase-diffusion limit
/// rho kappa h^2 / 2, the elastic wave limit h sqrt(rho / a), the reaction limit
/// rho / (2 F0) and, for thermal materials, rho c h^2 / (2 k_q). Heterogeneous
/// coefficients use the nodal Gershgorin form of each bound.
double stable_dt(const MaterialParams& params, const Grid1D& grid);

/// As above, dropping the diffusion limit for schemes that integrate it implicitly
/// or not at all.
double stable_dt(const MaterialParams& params, const Grid1D& grid, PhaseScheme scheme);

/// Kick-drift-kick update of the damaged momentum balance with the phase field held
/// at its current value. Advances state.t by dt.
FieldState step_momentum(const FieldState& state, const MaterialParams& params,
                         const Grid1D& grid, const LoadProgram& load, double dt);

/// Ginzburg-Landau update of phi driven by the stored fatigue, with zero-flux ends.
/// hist_H is advanced with the resulting change of clamp(phi). Does not touch t.
FieldState step_phase(const FieldState& state, const MaterialParams& params,
                      const Grid1D& grid, double dt,
                      PhaseScheme scheme = PhaseScheme::explicit_euler);

/// Explicit heat update given the phase before (phi_old) and after the phase step.
///   rho c theta' = k_q theta_xx + rho phi'^2 + fatigue F(phi)' + rho r
FieldState step_heat(const FieldState& state, std::span<const double> phi_old,
                     const MaterialParams& params, const Grid1D& grid, const LoadProgram& load,
                     double dt);

/// Integrate the coupled system from `initial` to controls.t_end. The step size is
/// reduced if necessary so an integer number of steps ends exactly at t_end.
RunResult run(const MaterialParams& params, const Grid1D& grid, const LoadProgram& load,
              const StepControls& controls, const FieldState& initial,
              const RunOptions& options = {});

/// Number of steps and the step actually used for a given request.
struct StepPlan {
    long steps;
    double dt;
};
StepPlan plan_steps(double dt, double t_end);

struct WeakResidual {
    double phase = 0.0;
    double momentum = 0.0;
};

/// Space-time quadrature of the two weak forms over a stored field history, with the
/// supplied test-function histories (one nodal field per stored time).
WeakResidual weak_residual(std::span<const FieldState> history, const MaterialParams& params,
                           const Grid1D& grid, const LoadProgram& load,
                           std::span<const Field> test_phi, std::span<const Field> test_u);

} // namespace fpf
