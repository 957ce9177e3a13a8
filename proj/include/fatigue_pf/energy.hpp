#pragma once

#include <span>
#include <vector>

#include "fatigue_pf/model.hpp"

namespace fpf {

struct EnergyReport {
    double t = 0.0;
    double psi = 0.0;
    double psi_F = 0.0;
    double P_m = 0.0;
    double P_s = 0.0;
    double dissipation_residual = 0.0;  // P_m + P_s - d(psi)/dt
};

/// Trapezoidal rule over the nodes.
double integrate(std::span<const double> nodal, double h);

double kinetic_energy(const FieldState& state, const MaterialParams& params, const Grid1D& grid);

/// Integral of (1 - clamp phi) a u_x v_x - clamp(phi) dfatigue/dt.
double internal_mechanical_power(const FieldState& state, const MaterialParams& params,
                                 const Grid1D& grid, std::span<const double> d_fatigue_dt);

/// Integral of rho phi'^2 + [(1/2kappa) phi_x^2]' + F0 G(phi)' + fatigue F(phi)' with
/// every rate taken as a difference between the two states over dt.
double internal_structural_power(const FieldState& before, const FieldState& after,
                                 const MaterialParams& params, const Grid1D& grid,
                                 std::span<const double> fatigue, double dt);

/// Integral of (1/2kappa) phi_x^2 + F0 G(phi) + fatigue F(phi).
double pseudo_fatigue_energy(const FieldState& state, const MaterialParams& params,
                             const Grid1D& grid);

/// Integral of 1/2 [(1 - p + p^2) a u_x^2 - p H + (1/kappa) phi_x^2 + 2 F0 G(phi)],
/// p = clamp(phi), H = hist_H.
double elastic_free_energy(const FieldState& state, const MaterialParams& params,
                           const Grid1D& grid);

/// Worst (smallest) dissipation residual in a report stream; 0 for an empty stream.
double dissipation_residual(std::span<const EnergyReport> reports);

struct LandscapePoint {
    double phi;
    double energy_density;
};

/// F0 G(phi) + fatigue F(phi) sampled uniformly on [-0.2, 1.2]. Requires samples >= 2.
std::vector<LandscapePoint> energy_landscape(double F0, double fatigue, int samples);

/// Clamped location of the smallest sampled value. Points on the flat branches outside
/// [0,1] map to the adjacent breakpoint.
double landscape_minimizer(std::span<const LandscapePoint> curve);

} // namespace fpf
