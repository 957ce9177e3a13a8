#pragma once

#include "fatigue_pf/model.hpp"

namespace fpf {

/// Nodal derivative: central differences inside, one-sided at the two ends.
Field nodal_gradient(std::span<const double> f, double h);

/// Isothermal fatigue power (1 - clamp phi) a u_x v_x at every node.
Field mech_power_density(const FieldState& state, const MaterialParams& params,
                         const Grid1D& grid);

/// Trapezoidal update fatigue + dt (p_old + p_new) / 2. Throws InvalidArgument for dt <= 0.
Field advance_fatigue(const FieldState& state, std::span<const double> p_old,
                      std::span<const double> p_new, double dt);

/// 1/2 (1 - clamp phi) a u_x^2 + 1/2 hist_H, the closed form of the fatigue integral
/// for an elastic virgin material started from the undeformed, undamaged state.
Field fatigue_elastic_closed_form(const FieldState& state, const MaterialParams& params,
                                  const Grid1D& grid);

/// Temperature-weighted fatigue power
///   (1 - clamp phi) [a u_x v_x / theta + k_q theta_x^2 / theta^2]
/// with Fourier heat flux. Throws SingularTemperature if theta <= 0 anywhere.
Field thermal_fatigue_density(const FieldState& state, const MaterialParams& params,
                              const Grid1D& grid);

/// The heat-flux part (1 - clamp phi) k_q theta_x^2 / theta^2 alone.
Field heat_flux_fatigue_density(const FieldState& state, const MaterialParams& params,
                                const Grid1D& grid);

} // namespace fpf
