#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fpf {

using Field = std::vector<double>;

/// Uniform 1D grid on [0, L] with n_cells cells and n_cells + 1 nodes.
class Grid1D {
public:
    Grid1D(double length, int n_cells);

    double length() const noexcept { return length_; }
    int n_cells() const noexcept { return n_cells_; }
    int n_nodes() const noexcept { return n_cells_ + 1; }
    double spacing() const noexcept { return length_ / n_cells_; }
    double node(int i) const noexcept { return i * spacing(); }
    Field nodes() const;

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    double length_;
    int n_cells_;
};

struct ThermalParams {
    double c = 1.0;          // specific heat
    double k_q = 0.0;        // Fourier conductivity, q = -k_q dtheta/dx
    double varkappa = 0.0;   // thermal stress coupling, stress += varkappa * theta
    double theta_ref = 1.0;  // reference absolute temperature

    friend bool operator==(const ThermalParams&, const ThermalParams&) = default;
};

/// Cellwise-constant material coefficients. Every field holds one value per cell.
/// The phase flux is (1/kappa) dphi/dx.
struct MaterialParams {
    Field rho;
    Field kappa;
    Field F0;
    Field a;
    std::optional<ThermalParams> thermal;

    static MaterialParams uniform(const Grid1D& grid, double rho, double kappa, double F0,
                                  double a);

    bool is_thermal() const noexcept { return thermal.has_value(); }

    friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

/// Node-centred view of the cell coefficients. Interior nodes average their two
/// neighbouring cells (lumped control volume), boundary nodes take their one cell.
struct NodalCoefficients {
    Field rho;
    Field inv_kappa;
    Field F0;
    Field a;

    explicit NodalCoefficients(const MaterialParams& params);
};

/// One time slice of the simulation. Arrays are nodal.
struct FieldState {
    double t = 0.0;
    Field u;
    Field v;
    Field phi;
    Field fatigue;
    Field hist_H;  // running integral of d(clamp phi)/dt * a * u_x^2
    Field theta;   // empty in isothermal runs

    bool has_theta() const noexcept { return !theta.empty(); }

    friend bool operator==(const FieldState&, const FieldState&) = default;
};

enum class LoadShape { uniform, half_sine, gaussian };

/// Cyclic body force b(x,t) = amplitude * shape(x) * sin(omega t) plus a constant heat supply.
struct LoadProgram {
    double amplitude = 0.0;
    double omega = 0.0;
    LoadShape shape = LoadShape::uniform;
    double center = 0.5;  // gaussian only
    double width = 0.1;   // gaussian only
    double heat_supply = 0.0;

    /// Spatial profile with max |shape| = 1 on the grid's domain.
    double shape_at(double x, double length) const;
    double body_force(double x, double t, double length) const;
    Field body_force(const Grid1D& grid, double t) const;

    friend bool operator==(const LoadProgram&, const LoadProgram&) = default;
};

std::vector<std::string> validate(const MaterialParams& params, const Grid1D& grid,
                                  const FieldState& state);

std::vector<std::string> validate(const LoadProgram& load);

/// Build the t = 0 state with zero fatigue and history. Throws PreconditionViolation when
/// phi0 leaves [0,1] or u0 does not vanish on the boundary.
FieldState initial_state(const Grid1D& grid, std::span<const double> u0,
                         std::span<const double> v0, std::span<const double> phi0,
                         std::optional<std::span<const double>> theta0 = std::nullopt);

/// Arithmetic mean of the neighbouring cells at every node.
Field cells_to_nodes(std::span<const double> cells);

} // namespace fpf
