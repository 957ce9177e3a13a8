#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "fatigue_pf/energy.hpp"
#include "fatigue_pf/solver.hpp"

namespace fpf {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_number(double x);

/// Header plus one row per sample:
/// t,phi_max,phi_min,phi_probe,fatigue_probe,kinetic_energy,free_energy,psi_F,P_m,P_s,dissipation_residual
void write_trajectory(std::ostream& out, const Trajectory& trajectory);

/// Long format, one row per node per snapshot: t,x,u,v,phi,fatigue,hist_H[,theta]
void write_fields(std::ostream& out, std::span<const FieldState> snapshots, const Grid1D& grid);

/// Two columns: phi,energy_density
void write_landscape(std::ostream& out, std::span<const LandscapePoint> curve);

/// Comma-separated list of reals ("1,2,3.5"). Throws InvalidArgument on bad entries.
std::vector<double> parse_number_list(const std::string& text);

/// Strict full-string parse of a double. Returns false on trailing junk or non-finite input.
bool parse_number(const std::string& text, double& out);

} // namespace fpf
