#include "ctc/evolve.hpp"

#include "ctc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ctc {

namespace {

[[noreturn]] void breach(double t, const std::string& what) {
    std::ostringstream os;
    os << "invariant breach at t = " << t << ": " << what
       << " (numerical blow-up signal; consider shrinking dt_max)";
    throw InvariantViolation(os.str());
}

}  // namespace

double stable_dt(const SimState& state, const ModelParams& params, const StepControl& ctl) {
    if (!(ctl.cfl_safety > 0.0 && ctl.cfl_safety <= 1.0))
        throw std::invalid_argument("StepControl: cfl_safety must lie in (0, 1]");
    const double h = state.u.grid->spacing();
    double dt = ctl.dt_max;
    // Advective bound on the raw signal gradient (>= the F'-weighted face
    // velocity, so it also caps the drift).
    const double vr_max = gradient_radial(state.v).abs().maxCoeff();
    if (vr_max > 0.0) dt = std::min(dt, ctl.cfl_safety * h / vr_max);
    const double f_max = f_eps(state.u.values.max(0.0), params.eps).maxCoeff();
    if (f_max > 0.0) dt = std::min(dt, ctl.cfl_safety / f_max);
    return dt;
}

SimState step_dt(const SimState& state, const ModelParams& params, double dt, FluxScheme scheme) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_dt: dt must be positive");
    require_same_grid(state.u, state.v, "step_dt");
    require_consistent(params, *state.u.grid);
    const RadialGrid& grid = *state.u.grid;
    const double t_new = state.t + dt;

    const Array u_old = state.u.values.max(0.0);  // round-off negatives enter F_eps as 0
    const Array face_velocity = drift_face_velocity(state.u, state.v, params.eps);

    if (scheme == FluxScheme::centered) {
        const double peclet = face_velocity.abs().maxCoeff() * grid.spacing();
        if (peclet > 2.0)
            breach(t_new, "mesh Peclet number " + std::to_string(peclet) +
                              " exceeds 2 for centered fluxes; refine the grid or use the upwind scheme");
    }

    // u-update: single implicit solve of the combined drift-diffusion flux.
    const TridiagonalSystem u_sys =
        assemble_drift_diffusion_noflux(grid, face_velocity, 1.0 / dt, state.u.values / dt, scheme);
    Array u_new = solve_tridiagonal(u_sys);
    if (!u_new.isFinite().all()) breach(t_new, "non-finite u");
    const double u_scale = std::max(1.0, u_old.maxCoeff());
    if (u_new.minCoeff() < -1e-13 * u_scale) breach(t_new, "u lost nonnegativity");
    u_new = u_new.max(0.0);

    const double mass_old = integrate(grid, state.u.values);
    const double mass_new = integrate(grid, u_new);
    if (std::abs(mass_new - mass_old) > 1e-12 * std::max(mass_old, 1e-300))
        breach(t_new, "mass drifted by " + std::to_string(mass_new - mass_old));

    // v-update: implicit diffusion + implicit consumption at the old u.
    const Array consumption = f_eps(u_old, params.eps);
    const TridiagonalSystem v_sys =
        assemble_helmholtz_dirichlet(grid, consumption + 1.0 / dt, state.v.values / dt, params.v_star);
    Array v_new = solve_tridiagonal(v_sys);
    if (!v_new.isFinite().all()) breach(t_new, "non-finite v");
    if (!(v_new.minCoeff() > 0.0) && params.v_star > 0.0) breach(t_new, "v lost positivity");
    if (v_new.minCoeff() < 0.0) breach(t_new, "v went negative");
    const double v_bound = std::max(state.v.values.maxCoeff(), params.v_star);
    if (v_new.maxCoeff() > v_bound + 1e-9) breach(t_new, "maximum principle for v failed");

    return SimState{t_new, RadialField{state.u.grid, std::move(u_new)}, RadialField{state.v.grid, std::move(v_new)}};
}

SimState step(const SimState& state, const ModelParams& params, const StepControl& ctl, double dt_cap) {
    const double dt = std::min(stable_dt(state, params, ctl), dt_cap);
    if (!(dt > 0.0) || dt < 1e-15 * std::max(1.0, ctl.t_end))
        throw SolverFailure("step: step size underflow at t = " + std::to_string(state.t));
    return step_dt(state, params, dt, ctl.scheme);
}

Trajectory run(const InitialData& initial, const ModelParams& params, const StepControl& ctl) {
    require_valid_initial(initial, params);
    const RadialGrid& grid = *initial.u0.grid;

    const double mass0 = integrate(initial.u0);
    const double v_bound = std::max(initial.v0.values.maxCoeff(), params.v_star);

    Trajectory traj;
    SimState state{0.0, initial.u0, initial.v0};
    auto emit = [&](const SimState& s) {
        DiagnosticsRecord rec = record(s, params);
        const auto violations = check_record(rec, mass0, v_bound, grid.ball_volume());
        if (!violations.empty()) {
            std::string joined;
            for (const auto& v : violations) joined += (joined.empty() ? "" : ", ") + v;
            breach(s.t, joined);
        }
        traj.snapshots.push_back(s);
        traj.records.push_back(rec);
    };

    emit(state);
    if (ctl.t_end <= 0.0) return traj;

    const double out_dt = ctl.output_dt > 0.0 ? ctl.output_dt : ctl.t_end;
    // Snapping slack: a few ULP of the time scale, so capped steps cannot
    // Zeno toward an output time they never exactly reach.
    const double snap = 1e-13 * std::max(1.0, ctl.t_end);
    long next_output = 1;
    while (state.t < ctl.t_end - snap) {
        const double t_target = std::min(next_output * out_dt, ctl.t_end);
        state = step(state, params, ctl, t_target - state.t);
        if (state.t >= t_target - snap) {
            state.t = t_target;
            emit(state);
            ++next_output;
        }
    }
    return traj;
}

}  // namespace ctc
