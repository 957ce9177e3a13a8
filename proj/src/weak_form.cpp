#include <cmath>

#include "fatigue_pf/errors.hpp"
#include "fatigue_pf/potentials.hpp"
#include "fatigue_pf/solver.hpp"

namespace fpf {

namespace {

// Trapezoid weights of the node-centred control volumes.
double node_weight(int i, int n, double h)
{
    return (i == 0 || i == n - 1) ? 0.5 * h : h;
}

} // namespace

WeakResidual weak_residual(std::span<const FieldState> history, const MaterialParams& params,
                           const Grid1D& grid, const LoadProgram& load,
                           std::span<const Field> test_phi, std::span<const Field> test_u)
{
    if (test_phi.size() != history.size() || test_u.size() != history.size())
        throw InvalidArgument("weak_residual: test histories must match the field history");
    const int n = grid.n_nodes();
    for (std::size_t k = 0; k < history.size(); ++k) {
        if (static_cast<int>(history[k].phi.size()) != n ||
            static_cast<int>(test_phi[k].size()) != n || static_cast<int>(test_u[k].size()) != n)
            throw InvalidArgument("weak_residual: every stored field must be nodal");
    }

    const double h = grid.spacing();
    const NodalCoefficients c(params);
    WeakResidual r;

    // Phase form, one slab per stored interval with midpoint coefficients:
    //   rho phi' psi' + (1/kappa) phi_x psi'_x + <-1> fatigue psi' + F0 <G'> psi'
    for (std::size_t k = 0; k + 1 < history.size(); ++k) {
        const FieldState& s0 = history[k];
        const FieldState& s1 = history[k + 1];
        const double dt = s1.t - s0.t;
        if (!(dt > 0.0))
            throw InvalidArgument("weak_residual: stored times must increase");
        double slab = 0.0;
        for (int i = 0; i < n; ++i) {
            const double rate = (s1.phi[i] - s0.phi[i]) / dt;
            const double test_rate = (test_phi[k + 1][i] - test_phi[k][i]) / dt;
            const double drive = 0.5 * (dF(s0.phi[i]) * s0.fatigue[i] + dF(s1.phi[i]) * s1.fatigue[i]);
            const double restore = 0.5 * c.F0[i] * (dG(s0.phi[i]) + dG(s1.phi[i]));
            slab += node_weight(i, n, h) * (c.rho[i] * rate + drive + restore) * test_rate;
        }
        for (int j = 0; j + 1 < n; ++j) {
            const double grad = 0.5 * ((s0.phi[j + 1] - s0.phi[j]) + (s1.phi[j + 1] - s1.phi[j])) / h;
            const double test_grad = ((test_phi[k + 1][j + 1] - test_phi[k + 1][j]) -
                                      (test_phi[k][j + 1] - test_phi[k][j])) / (h * dt);
            slab += h * grad * test_grad / params.kappa[j];
        }
        r.phase += dt * slab;
    }

    // Momentum form at every interior stored time:
    //   rho u'' w' + (1 - clamp phi)^2 a u_x w'_x - rho b w'
    for (std::size_t k = 1; k + 1 < history.size(); ++k) {
        const FieldState& sm = history[k - 1];
        const FieldState& s = history[k];
        const FieldState& sp = history[k + 1];
        const double dm = s.t - sm.t;
        const double dp = sp.t - s.t;
        const double span = dm + dp;
        double slab = 0.0;
        for (int i = 1; i < n - 1; ++i) {
            const double acc = 2.0 * ((sp.u[i] - s.u[i]) / dp - (s.u[i] - sm.u[i]) / dm) / span;
            const double test_rate = (test_u[k + 1][i] - test_u[k - 1][i]) / span;
            const double b = load.body_force(grid.node(i), s.t, grid.length());
            slab += h * c.rho[i] * (acc - b) * test_rate;
        }
        for (int j = 0; j + 1 < n; ++j) {
            const double g = 0.5 * (degradation(s.phi[j]) + degradation(s.phi[j + 1]));
            const double strain = (s.u[j + 1] - s.u[j]) / h;
            const double test_rate_x = ((test_u[k + 1][j + 1] - test_u[k + 1][j]) -
                                        (test_u[k - 1][j + 1] - test_u[k - 1][j])) / (h * span);
            slab += h * g * params.a[j] * strain * test_rate_x;
        }
        r.momentum += 0.5 * span * slab;
    }
    return r;
}

} // namespace fpf
