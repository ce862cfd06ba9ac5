#pragma once

#include "ctc/diagnostics.hpp"
#include "ctc/model.hpp"
#include "ctc/operators.hpp"
#include "ctc/sim_state.hpp"

#include <limits>
#include <vector>

namespace ctc {

// Time integration of the regularized system. Both updates are backward-Euler
// tridiagonal solves with the nonlinearities frozen at the old state:
//
//   u: combined drift-diffusion flux with zero *total* flux at r = R (the
//      literal discrete no-flux condition), drift velocity F_eps'(u) v_r from
//      the old state. Column sums of the matrix equal cell volumes, so mass
//      is conserved exactly. Centered face values by default (second order;
//      M-matrix while |F' v_r| h <= 2, checked each step); first-order upwind
//      available as a fallback (M-matrix unconditionally).
//   v: implicit diffusion with Dirichlet v_star plus implicit linear
//      consumption -F_eps(u_old) v_new, which keeps v positive and below
//      max(||v_old||_inf, v_star) unconditionally.

struct StepControl {
    double dt_max = 1e-2;
    double cfl_safety = 0.4;  // in (0, 1]
    double t_end = 1.0;
    double output_dt = 0.1;
    FluxScheme scheme = FluxScheme::centered;
};

/// Largest admissible step from the current state: min of dt_max, the
/// advective bound cfl * h / max|F' v_r|, and the consumption bound
/// cfl / max F_eps(u).
double stable_dt(const SimState& state, const ModelParams& params, const StepControl& ctl);

/// One backward-Euler step of fixed size dt. Enforces the structural
/// invariants (finiteness, u >= 0, v > 0, per-step maximum principle, exact
/// mass conservation to 1e-12 relative); throws InvariantViolation with the
/// failing time attached when the scheme destabilizes.
SimState step_dt(const SimState& state, const ModelParams& params, double dt, FluxScheme scheme);

/// One step with automatically chosen dt (capped by dt_cap, e.g. the distance
/// to the next output time).
SimState step(const SimState& state, const ModelParams& params, const StepControl& ctl,
              double dt_cap = std::numeric_limits<double>::infinity());

struct Trajectory {
    std::vector<SimState> snapshots;
    std::vector<DiagnosticsRecord> records;
};

/// Validates the initial data, then integrates to t_end, emitting a snapshot
/// and a diagnostics record at every output time (and at t = 0). Each emitted
/// record is checked against the trajectory invariants (mass vs. the initial
/// mass, the maximum principle vs. max(||v0||_inf, v_star), the entropy
/// floor); violations abort with the failing time attached.
Trajectory run(const InitialData& initial, const ModelParams& params, const StepControl& ctl);

}  // namespace ctc
