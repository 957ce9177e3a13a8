#pragma once

#include <optional>
#include <string>

#include "fatigue_pf/model.hpp"
#include "fatigue_pf/solver.hpp"

namespace fpf {

enum class InitialDisplacement { zero, half_sine };

/// Everything needed to reproduce a run. Read from a sectioned key = value file:
///
///   [grid]      L, n_cells
///   [material]  rho, kappa, F0, a  (+ c, k_q, varkappa, theta_ref for thermal runs)
///   [load]      amplitude, omega, shape, center, width, heat_supply
///   [controls]  dt (number or auto), t_end, cfl_safety, phase_scheme, sample_every
///   [initial]   u0_kind, u0_amplitude, phi0_const, theta0_const
///   [outputs]   trajectory_path, fields_path, probe_node
struct RunConfig {
    struct GridSection {
        double L = 1.0;
        int n_cells = 0;
        friend bool operator==(const GridSection&, const GridSection&) = default;
    };
    struct MaterialSection {
        double rho = 0.0;
        double kappa = 0.0;
        double F0 = 0.0;
        double a = 0.0;
        std::optional<ThermalParams> thermal;
        friend bool operator==(const MaterialSection&, const MaterialSection&) = default;
    };
    struct ControlsSection {
        bool dt_auto = true;
        double dt = 0.0;  // resolved value when dt_auto
        double t_end = 0.0;
        double cfl_safety = 0.5;
        PhaseScheme phase_scheme = PhaseScheme::explicit_euler;
        int sample_every = 1;
        friend bool operator==(const ControlsSection&, const ControlsSection&) = default;
    };
    struct InitialSection {
        InitialDisplacement u0_kind = InitialDisplacement::zero;
        double u0_amplitude = 0.0;
        double phi0_const = 0.0;
        std::optional<double> theta0_const;  // defaults to theta_ref in thermal runs
        friend bool operator==(const InitialSection&, const InitialSection&) = default;
    };
    struct OutputsSection {
        std::string trajectory_path = "trajectory.csv";
        std::optional<std::string> fields_path;
        int probe_node = -1;  // -1: middle node
        friend bool operator==(const OutputsSection&, const OutputsSection&) = default;
    };

    GridSection grid;
    MaterialSection material;
    LoadProgram load;
    ControlsSection controls;
    InitialSection initial;
    OutputsSection outputs;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;

    Grid1D make_grid() const;
    MaterialParams make_params() const;
    StepControls make_controls() const;
    FieldState make_initial_state() const;
    RunOptions make_options() const;
    int probe() const;
    bool thermal() const noexcept { return material.thermal.has_value(); }

    /// Recompute controls.dt from the stability limit when dt_auto is set.
    void resolve_dt();

    /// Every admissibility problem, each prefixed with its section.key.
    std::vector<std::string> check() const;
};

/// Parse and validate. Throws ConfigError listing every problem with its location.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

/// Canonical text form; parse_config_text(format_config(c)) == c.
std::string format_config(const RunConfig& config);

const char* to_string(PhaseScheme scheme);
const char* to_string(LoadShape shape);

} // namespace fpf
