#pragma once

#include "ctc/model.hpp"
#include "ctc/sim_state.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ctc {

// Every quantitative object of the energy analysis, evaluated on a discrete
// state with grid quadrature. Boundary quantities are one-sided stencils at
// r = R fed by the Dirichlet face value and three boundary-adjacent cells.

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;        // int u
    double u_max = 0.0;       // sup u (boundedness monitoring)
    double v_max = 0.0;       // sup v, including the boundary value
    double v_grad_max = 0.0;  // sup |v_r| over faces
    double v_grad_l2 = 0.0;   // int |grad v|^2
    double entropy = 0.0;     // int u ln u, with 0 ln 0 = 0
    double energy_y = 0.0;    // int u ln u + 1/2 int |grad v|^2 / v
    std::optional<double> fisher;  // int |grad u|^2 / u; absent when min u < 1e-14
    double hesslog = 0.0;     // int v |D^2 ln v|^2
    double cross = 0.0;       // 1/2 int (F_eps(u)/v) |grad v|^2
    double grad4 = 0.0;       // int |grad v|^4
    std::optional<double> bdry1;  // |dOmega| (1/v) d_r(v_r^2) at r = R; absent when v_star = 0
    double bdry2 = 0.0;           // |dOmega| v_r^2 d_r(v_r^2) at r = R
    std::optional<double> bdry3;  // |dOmega| (v_r^2/v^2) v_r at R; absent when v_star = 0
    double u_boundary = 0.0;  // u extrapolated to r = R
};

/// Positivity floor below which the Fisher information is reported as absent
/// rather than regularized.
inline constexpr double kFisherFloor = 1e-14;

DiagnosticsRecord record(const SimState& state, const ModelParams& params);

/// Discrete residual of the energy identity over consecutive records:
/// residual_k = [y_{k+1} - y_k]/dt + avg(fisher + hesslog + cross
///              - 1/2 bdry1 + 1/2 bdry3), interval-averaged. Vanishes as
/// (h, dt) -> 0 along smooth trajectories. Needs >= 2 records. An absent
/// Fisher term (u identically zero) contributes 0.
std::vector<double> energy_identity_residual(std::span<const DiagnosticsRecord> window);

struct Grad4InequalityResult {
    double lhs = 0.0;        // int |grad phi|^4 / phi^3
    double rhs = 0.0;        // (2+sqrt n)^2 int phi |D^2 ln phi|^2 + 2 boundary term
    double tolerance = 0.0;  // h-scaled slack for the discrete comparison
    bool satisfied = false;  // lhs <= rhs + tolerance
};

/// Functional inequality check on a positive radial profile. The boundary
/// term is evaluated from one-sided extrapolations (no boundary condition is
/// assumed on phi).
Grad4InequalityResult grad4_inequality_check(const RadialField& phi);

struct SpacetimeWindow {
    double t_begin = 0.0;
    double t_end = 0.0;
    double int_u_power = 0.0;       // int int u^{(n+2)/n}
    double int_grad_u_power = 0.0;  // int int |grad u|^{(n+2)/(n+1)}
    double int_grad_v4 = 0.0;       // int int |grad v|^4
};

/// Space-time integrals over consecutive windows of the given length,
/// trapezoidal in time. Snapshots must cover at least one full window.
std::vector<SpacetimeWindow> spacetime_bounds(std::span<const SimState> snapshots, const ModelParams& params,
                                              double window = 1.0);

struct EnergyBoundCheck {
    double y0 = 0.0;
    double y_max = 0.0;
    double windowed_boundary_max = 0.0;  // max over windows of int (positive part of h_obs)
    double bound = 0.0;                  // y0 + windowed_boundary_max / (1 - 1/e)
    double slack = 0.0;                  // y_max - bound (negative = comfortably inside)
};

/// Monitorable form of the dissipation-driven energy bound: compares sup_t y
/// against y(0) plus the windowed boundary forcing accumulated through the
/// 1/(1 - e^{-1}) comparison factor. The unobservable interpolation constants
/// of the analysis are not included; callers allow a tolerance on `slack`.
EnergyBoundCheck energy_bound_monitor(std::span<const DiagnosticsRecord> records, int dim, double window = 1.0);

/// Checks the single-record invariants (entropy floor, max principle against
/// the given bound, mass against the initial mass). Returns violation names.
std::vector<std::string> check_record(const DiagnosticsRecord& rec, double initial_mass, double v_bound,
                                      double ball_volume);

}  // namespace ctc
