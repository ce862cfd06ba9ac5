#include "ctc/stationary.hpp"

#include "ctc/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ctc {

namespace {

constexpr double kBoundSlack = 1e-9;

void check_barrier_bounds(const Array& v, double v_star, const char* where) {
    if (v.minCoeff() < -kBoundSlack || v.maxCoeff() > v_star + kBoundSlack) {
        std::ostringstream os;
        os << where << ": profile escaped [0, v_star]: min = " << v.minCoeff() << ", max = " << v.maxCoeff()
           << ", v_star = " << v_star;
        throw InvariantViolation(os.str());
    }
}

}  // namespace

RadialField solve_linearized(const RadialField& v_frozen, double alpha, double v_star) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("solve_linearized: alpha must be nonnegative");
    if (!(v_star >= 0.0)) throw std::invalid_argument("solve_linearized: v_star must be nonnegative");
    if (!all_finite(v_frozen)) throw std::invalid_argument("solve_linearized: v_frozen must be finite");
    const RadialGrid& grid = *v_frozen.grid;

    const Array reaction = alpha * v_frozen.values.exp();
    const Array zero = Array::Zero(grid.cells());
    const TridiagonalSystem sys = assemble_helmholtz_dirichlet(grid, reaction, zero, v_star);
    Array w = solve_tridiagonal(sys);
    check_barrier_bounds(w, v_star, "solve_linearized");
    return RadialField{v_frozen.grid, std::move(w)};
}

StationaryResult stationary_v(GridPtr grid, double alpha, double v_star, double tol, int max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("stationary_v: tol must be positive");
    StationaryResult result;
    result.alpha = alpha;

    // Start at the upper barrier; iterates then stay inside [0, v_star].
    RadialField v = make_field(grid, v_star);
    double update = 0.0;
    int iterations = 0;
    bool converged = false;
    while (iterations < max_iter) {
        RadialField next = solve_linearized(v, alpha, v_star);
        update = (next.values - v.values).abs().maxCoeff();
        v = std::move(next);
        ++iterations;
        if (update <= tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "stationary_v: Picard iteration did not converge within " << max_iter
           << " iterations (last update " << update << ", tol " << tol << ")";
        throw SolverFailure(os.str());
    }

    check_barrier_bounds(v.values, v_star, "stationary_v");
    result.iterations = iterations;
    result.final_update = update;
    result.bounds_ok = true;

    const RadialField lap = laplacian_radial(v, DirichletAtOuter{v_star});
    result.defect = (lap.values - alpha * v.values * v.values.exp()).abs().maxCoeff();

    const Array vr = gradient_radial(v);
    result.vr_nonneg = vr.minCoeff() >= -1e-8 * std::max(1.0, vr.abs().maxCoeff());

    result.u = reconstruct_u(alpha, v);
    result.mass = integrate(result.u);
    result.v_alpha = std::move(v);
    return result;
}

RadialField reconstruct_u(double alpha, const RadialField& v_alpha) {
    return RadialField{v_alpha.grid, alpha * v_alpha.values.exp()};
}

double mass_of_alpha(GridPtr grid, double alpha, double v_star, double tol) {
    return stationary_v(std::move(grid), alpha, v_star, tol).mass;
}

MassInversion alpha_of_mass(GridPtr grid, double m_target, double v_star, double mass_tol, double picard_tol) {
    if (!(m_target >= 0.0)) throw std::invalid_argument("alpha_of_mass: target mass must be nonnegative");
    MassInversion inversion;
    if (m_target == 0.0) {
        inversion.result = stationary_v(grid, 0.0, v_star, picard_tol);
        return inversion;
    }

    const double ball = grid->ball_volume();
    double lo = 0.0;
    double hi = m_target / ball + std::max(1e-6, 1e-3 * m_target / ball);
    // Valid bracket: m(hi) >= hi |Omega| > m_target, m(0) = 0.
    const double mass_goal = mass_tol * std::max(1.0, m_target);
    const double width_goal = 1e-10 * std::max(1.0, hi);

    double mid = hi;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double m_mid = mass_of_alpha(grid, mid, v_star, picard_tol);
        inversion.trace.push_back({iter, lo, hi, mid, m_mid});
        if (m_mid < m_target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= width_goal && std::abs(m_mid - m_target) <= mass_goal) break;
    }
    inversion.result = stationary_v(grid, mid, v_star, picard_tol);
    if (std::abs(inversion.result.mass - m_target) > mass_goal)
        throw SolverFailure("alpha_of_mass: bisection stalled before reaching the mass tolerance");
    return inversion;
}

RadialField vprime_solve(double alpha, const RadialField& v_alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("vprime_solve: alpha must be positive");
    const RadialGrid& grid = *v_alpha.grid;
    const Array& v = v_alpha.values;

    // -Lap y + alpha e^v (1 + v) y = -v e^v, zero Dirichlet data.
    const Array reaction = alpha * v.exp() * (1.0 + v);
    const Array rhs = -v * v.exp();
    const TridiagonalSystem sys = assemble_helmholtz_dirichlet(grid, reaction, rhs, 0.0);
    Array y = solve_tridiagonal(sys);

    if (y.maxCoeff() > kBoundSlack || y.minCoeff() <= -1.0 / alpha - kBoundSlack) {
        std::ostringstream os;
        os << "vprime_solve: derivative escaped (-1/alpha, 0]: min = " << y.minCoeff() << ", max = " << y.maxCoeff()
           << ", alpha = " << alpha;
        throw InvariantViolation(os.str());
    }
    return RadialField{v_alpha.grid, std::move(y)};
}

Array vr_quadrature_form(double alpha, const RadialField& v_alpha) {
    const RadialGrid& grid = *v_alpha.grid;
    const int m = grid.cells();
    // v_r(r_j) = alpha * int_0^{r_j} s^{n-1} v e^v ds / r_j^{n-1}; the shell
    // integrals of s^{n-1} are exact, matching integrate()'s quadrature.
    const Array cell_term = grid.volumes() * v_alpha.values * v_alpha.values.exp();
    Array vr = Array::Zero(m + 1);
    double acc = 0.0;
    for (int j = 1; j <= m; ++j) {
        acc += cell_term[j - 1];
        vr[j] = alpha * acc / grid.face_areas()[j];
    }
    return vr;
}

ConvexityReport convexity_check(double alpha, const RadialField& v_alpha) {
    const Array vr = gradient_radial(v_alpha);
    const double tol = 1e-8 * std::max(1.0, vr.abs().maxCoeff());

    ConvexityReport report;
    report.monotone = vr.minCoeff() >= -tol;
    report.convex = true;
    for (int j = 0; j + 1 < vr.size(); ++j) {
        if (vr[j + 1] - vr[j] < -tol) {
            report.convex = false;
            break;
        }
    }
    const Array vq = vr_quadrature_form(alpha, v_alpha);
    report.vr_quadrature_mismatch = (vr.tail(vr.size() - 1) - vq.tail(vq.size() - 1)).abs().maxCoeff();
    return report;
}

}  // namespace ctc
