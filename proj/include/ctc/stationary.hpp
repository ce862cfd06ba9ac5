#pragma once

#include "ctc/field.hpp"
#include "ctc/operators.hpp"

#include <vector>

namespace ctc {

// Constructive stationary theory: u is eliminated through u = alpha e^v and
// the remaining scalar problem  Lap v = alpha v e^v,  v = v_star on dOmega
// is solved by Picard iteration on the linearized equation. The multiplier
// alpha is in one-to-one correspondence with the total mass m = int u.

struct StationaryResult {
    double alpha = 0.0;
    RadialField v_alpha;
    RadialField u;        // alpha * exp(v_alpha), pointwise
    double mass = 0.0;    // int u
    int iterations = 0;
    double final_update = 0.0;  // sup-norm of the last Picard correction
    double defect = 0.0;        // || Lap v - alpha v e^v ||_inf (discrete)
    bool bounds_ok = false;     // 0 <= v_alpha <= v_star + 1e-9
    bool vr_nonneg = false;     // discrete v_r >= 0 at all faces
};

/// Default sup-norm stopping tolerance for the Picard iteration; sits above
/// the tridiagonal solve's round-off plateau at the largest grids (M = 2048).
inline constexpr double kPicardTol = 1e-11;
inline constexpr int kPicardMaxIter = 500;

/// One linearized solve: Lap w = alpha e^{v_frozen} w with Dirichlet value
/// v_star at r = R and symmetry at r = 0. The discrete solution obeys
/// 0 <= w <= v_star exactly (M-matrix comparison with the constant barrier).
RadialField solve_linearized(const RadialField& v_frozen, double alpha, double v_star);

/// Picard iteration v^{k+1} = solve_linearized(v^k) from v^0 = v_star (the
/// upper barrier), stopped when the sup-norm update drops below tol. Throws
/// SolverFailure (reporting the last update size) if max_iter is exhausted,
/// and InvariantViolation if the computed profile escapes [0, v_star + 1e-9].
StationaryResult stationary_v(GridPtr grid, double alpha, double v_star, double tol = kPicardTol,
                              int max_iter = kPicardMaxIter);

/// u = alpha e^{v_alpha} pointwise.
RadialField reconstruct_u(double alpha, const RadialField& v_alpha);

/// m(alpha) = int alpha e^{v_alpha}; strictly increasing with
/// alpha |Omega| <= m(alpha) <= alpha e^{v_star} |Omega|.
double mass_of_alpha(GridPtr grid, double alpha, double v_star, double tol = kPicardTol);

struct BisectionStep {
    int iter = 0;
    double alpha_lo = 0.0;
    double alpha_hi = 0.0;
    double alpha_mid = 0.0;
    double mass_mid = 0.0;
};

struct MassInversion {
    StationaryResult result;
    std::vector<BisectionStep> trace;
};

/// Inverts the mass map by bisection on [0, m/|Omega| + delta] (a valid
/// bracket since m(alpha) >= alpha |Omega|). Stops when the recovered mass
/// matches to tol * max(1, m_target) and the bracket is relatively tight.
MassInversion alpha_of_mass(GridPtr grid, double m_target, double v_star, double mass_tol = 1e-10,
                            double picard_tol = kPicardTol);

/// Linear BVP for the alpha-derivative of v_alpha:
/// Lap v' = v + alpha e^v (1 + v) v', v' = 0 on dOmega. The solution obeys
/// 0 >= v' > -1/alpha.
RadialField vprime_solve(double alpha, const RadialField& v_alpha);

struct ConvexityReport {
    bool monotone = false;  // discrete v_r >= -tol at all faces
    bool convex = false;    // discrete v_r nondecreasing across faces
    /// sup |v_r(FD) - v_r(quadrature form)| over faces; O(h^2) on smooth data.
    double vr_quadrature_mismatch = 0.0;
};

/// Monotonicity/convexity verdict plus the cross-check of the discrete v_r
/// against its integral representation r^{1-n} int_0^r alpha s^{n-1} v e^v ds.
ConvexityReport convexity_check(double alpha, const RadialField& v_alpha);

/// The integral representation of v_r, evaluated with the grid quadrature at
/// every face (length M+1).
Array vr_quadrature_form(double alpha, const RadialField& v_alpha);

}  // namespace ctc
