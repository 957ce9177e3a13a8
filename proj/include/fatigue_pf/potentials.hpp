#pragma once

// Clamped damage potentials of the Ginzburg-Landau damage equation.
//
//   F(phi) = -clamp(phi)
//   G(phi) = phi^2 - phi^3/6 on [0,1], 5/6 above, 0 below
//
// Derivatives take their interior values at the breakpoints 0 and 1, so G'
// jumps from 3/2 to 0 at phi = 1. No smoothing is applied anywhere.
// All functions throw fpf::InvalidArgument on non-finite input.

namespace fpf {

double clamp_phase(double phi);
double potential_F(double phi);
double potential_G(double phi);
double dF(double phi);
double dG(double phi);

/// Stiffness degradation (1 - clamp(phi))^2 applied to the virgin stress.
double degradation(double phi);

} // namespace fpf
