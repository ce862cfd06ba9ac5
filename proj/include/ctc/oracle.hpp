#pragma once

#include "ctc/field.hpp"

#include <functional>

namespace ctc {

// Independent reference solvers, used only by tests. The shooting method
// shares no discretization code with the stationary module (one-step ODE
// integration + bisection on the center value vs. finite volumes + Picard),
// so agreement between the two is genuine cross-validation.

struct ShootingConfig {
    double s_lo = 0.0;
    double s_hi = -1.0;  // negative: default to v_star (the upper barrier)
    int ode_steps = 8192;
    double boundary_tol = 1e-12;  // on |v(R) - v_star|
    int max_bisect = 200;
};

/// Integrates (r^{n-1} v_r)_r = alpha r^{n-1} v e^v outward from the center
/// with v(0) = s, v_r(0) = 0 (classical RK4; the coordinate singularity is
/// bridged by a series start at r = 1e-6 R), and bisects on s until the
/// boundary value matches v_star. Returns the profile sampled at the grid's
/// cell centers via cubic Hermite interpolation of the dense solution.
RadialField shoot_stationary(GridPtr grid, double alpha, double v_star, ShootingConfig cfg = {});

/// Composite-Simpson reference value of omega_{n-1} int_0^R r^{n-1} f(r) dr
/// at `factor` times the grid resolution. Used as the quadrature oracle for
/// the diagnostics integrals.
double fine_quadrature(const std::function<double(double)>& f, const RadialGrid& grid, int factor = 10);

}  // namespace ctc
