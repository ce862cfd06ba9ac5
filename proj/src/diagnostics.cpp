#include "ctc/diagnostics.hpp"

#include "ctc/errors.hpp"
#include "ctc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctc {

namespace {

double entropy_of(const RadialGrid& grid, const Array& u) {
    // 0 ln 0 = 0; tiny round-off negatives (from linear solves) contribute 0.
    Array integrand(u.size());
    for (int i = 0; i < u.size(); ++i) integrand[i] = u[i] > 0.0 ? u[i] * std::log(u[i]) : 0.0;
    return integrate(grid, integrand);
}

}  // namespace

DiagnosticsRecord record(const SimState& state, const ModelParams& params) {
    require_same_grid(state.u, state.v, "diagnostics::record");
    require_consistent(params, *state.u.grid);
    const RadialGrid& grid = *state.u.grid;
    const Array& u = state.u.values;
    const Array& v = state.v.values;
    if ((v <= 0.0).any()) throw std::invalid_argument("diagnostics::record: v must be strictly positive");

    DiagnosticsRecord rec;
    rec.t = state.t;
    rec.mass = integrate(grid, u);
    rec.u_max = u.maxCoeff();
    rec.v_max = std::max(v.maxCoeff(), params.v_star);

    const Array vr = gradient_at_centers(state.v);
    const Array vr_faces = gradient_radial(state.v);
    rec.v_grad_max = vr_faces.abs().maxCoeff();
    rec.v_grad_l2 = integrate(grid, vr.square());
    rec.grad4 = integrate(grid, vr.square().square());

    rec.entropy = entropy_of(grid, u);
    rec.energy_y = rec.entropy + 0.5 * integrate(grid, vr.square() / v);

    if (u.minCoeff() >= kFisherFloor) {
        const Array ur = gradient_at_centers(state.u);
        rec.fisher = integrate(grid, ur.square() / u);
    }

    rec.hesslog = integrate(grid, v * hessian_log_norm_sq(state.v).values);
    rec.cross = 0.5 * integrate(grid, f_eps(u, params.eps) / v * vr.square());

    // Boundary quantities at r = R: v equals v_star there; v_r and v_rr come
    // from the Dirichlet-fed one-sided stencils. d_r(v_r^2) = 2 v_r v_rr.
    const double boundary = grid.boundary_area();
    const double vr_R = outer_derivative(state.v, params.v_star);
    const double vrr_R = outer_second_derivative(state.v, params.v_star);
    const double dvr2 = 2.0 * vr_R * vrr_R;
    rec.bdry2 = boundary * vr_R * vr_R * dvr2;
    if (params.v_star > 0.0) {
        rec.bdry1 = boundary * dvr2 / params.v_star;
        rec.bdry3 = boundary * (vr_R * vr_R) / (params.v_star * params.v_star) * vr_R;
    }
    rec.u_boundary = extrapolate_to_outer(state.u);
    return rec;
}

std::vector<double> energy_identity_residual(std::span<const DiagnosticsRecord> window) {
    if (window.size() < 2)
        throw std::invalid_argument("energy_identity_residual: need at least two consecutive records");
    std::vector<double> residuals;
    residuals.reserve(window.size() - 1);
    for (std::size_t k = 0; k + 1 < window.size(); ++k) {
        const DiagnosticsRecord& a = window[k];
        const DiagnosticsRecord& b = window[k + 1];
        const double dt = b.t - a.t;
        if (!(dt > 0.0)) throw std::invalid_argument("energy_identity_residual: records must advance in time");
        auto avg = [](double x, double y) { return 0.5 * (x + y); };
        const double dissipation = avg(a.fisher.value_or(0.0), b.fisher.value_or(0.0)) +
                                   avg(a.hesslog, b.hesslog) + avg(a.cross, b.cross) -
                                   0.5 * avg(a.bdry1.value_or(0.0), b.bdry1.value_or(0.0)) +
                                   0.5 * avg(a.bdry3.value_or(0.0), b.bdry3.value_or(0.0));
        residuals.push_back((b.energy_y - a.energy_y) / dt + dissipation);
    }
    return residuals;
}

Grad4InequalityResult grad4_inequality_check(const RadialField& phi) {
    if ((phi.values <= 0.0).any()) throw std::invalid_argument("grad4_inequality_check: phi must be strictly positive");
    const RadialGrid& grid = *phi.grid;
    const int n = grid.dim();

    const Array pr = gradient_at_centers(phi);
    Grad4InequalityResult result;
    result.lhs = integrate(grid, pr.square().square() / phi.values.cube());

    const double coeff = (2.0 + std::sqrt(static_cast<double>(n))) * (2.0 + std::sqrt(static_cast<double>(n)));
    const double hess = integrate(grid, phi.values * hessian_log_norm_sq(phi).values);

    const double phi_R = extrapolate_to_outer(phi);
    const double phir_R = outer_derivative(phi);
    const double boundary_term = 2.0 * grid.boundary_area() * (phir_R * phir_R) / (phi_R * phi_R) * phir_R;

    result.rhs = coeff * hess + boundary_term;
    result.tolerance = grid.spacing() * (1.0 + std::abs(result.rhs));
    result.satisfied = result.lhs <= result.rhs + result.tolerance;
    return result;
}

std::vector<SpacetimeWindow> spacetime_bounds(std::span<const SimState> snapshots, const ModelParams& params,
                                              double window) {
    if (snapshots.size() < 2) throw std::invalid_argument("spacetime_bounds: need at least two snapshots");
    const double t0 = snapshots.front().t;
    const double t1 = snapshots.back().t;
    if (t1 - t0 < window) throw std::invalid_argument("spacetime_bounds: trajectory shorter than one window");

    const int n = params.dim;
    const double pu = (n + 2.0) / n;
    const double pgu = (n + 2.0) / (n + 1.0);

    // Per-snapshot spatial integrals, then trapezoid in time per window.
    std::vector<double> iu, igu, igv, times;
    for (const SimState& s : snapshots) {
        const RadialGrid& grid = *s.u.grid;
        const Array ur = gradient_at_centers(s.u);
        const Array vr = gradient_at_centers(s.v);
        times.push_back(s.t);
        iu.push_back(integrate(grid, s.u.values.max(0.0).pow(pu)));
        igu.push_back(integrate(grid, ur.abs().pow(pgu)));
        igv.push_back(integrate(grid, vr.square().square()));
    }

    std::vector<SpacetimeWindow> out;
    for (double start = t0; start + window <= t1 + 1e-12; start += window) {
        const double stop = std::min(start + window, t1);
        SpacetimeWindow w;
        w.t_begin = start;
        w.t_end = stop;
        for (std::size_t k = 0; k + 1 < times.size(); ++k) {
            const double a = std::max(times[k], start);
            const double b = std::min(times[k + 1], stop);
            if (b <= a) continue;
            // Trapezoid on the overlapped part of the interval.
            const double span = times[k + 1] - times[k];
            auto lerp = [&](const std::vector<double>& f, double t) {
                const double s = (t - times[k]) / span;
                return (1.0 - s) * f[k] + s * f[k + 1];
            };
            w.int_u_power += 0.5 * (lerp(iu, a) + lerp(iu, b)) * (b - a);
            w.int_grad_u_power += 0.5 * (lerp(igu, a) + lerp(igu, b)) * (b - a);
            w.int_grad_v4 += 0.5 * (lerp(igv, a) + lerp(igv, b)) * (b - a);
        }
        out.push_back(w);
    }
    if (out.empty()) throw std::invalid_argument("spacetime_bounds: insufficient coverage");
    return out;
}

EnergyBoundCheck energy_bound_monitor(std::span<const DiagnosticsRecord> records, int dim, double window) {
    if (records.size() < 2) throw std::invalid_argument("energy_bound_monitor: need at least two records");
    EnergyBoundCheck check;
    check.y0 = records.front().energy_y;
    check.y_max = records.front().energy_y;
    for (const auto& r : records) check.y_max = std::max(check.y_max, r.energy_y);

    // Observable part of the boundary forcing h(t) in the y' + y <= h
    // comparison: (1/2) bdry1 + (2/(2+sqrt n)^2 - 1/2) bdry3.
    const double c4 = 1.0 / ((2.0 + std::sqrt(static_cast<double>(dim))) * (2.0 + std::sqrt(static_cast<double>(dim))));
    auto h_obs = [&](const DiagnosticsRecord& r) {
        return std::max(0.5 * r.bdry1.value_or(0.0) + (2.0 * c4 - 0.5) * r.bdry3.value_or(0.0), 0.0);
    };

    const double t0 = records.front().t;
    const double t1 = records.back().t;
    const double win = std::min(window, t1 - t0);
    double best = 0.0;
    for (std::size_t start = 0; start < records.size(); ++start) {
        if (records[start].t + win > t1 + 1e-12) break;
        double acc = 0.0;
        for (std::size_t k = start; k + 1 < records.size() && records[k].t < records[start].t + win; ++k) {
            const double dt = std::min(records[k + 1].t, records[start].t + win) - records[k].t;
            acc += 0.5 * (h_obs(records[k]) + h_obs(records[k + 1])) * dt;
        }
        best = std::max(best, acc);
    }
    check.windowed_boundary_max = best;
    check.bound = check.y0 + best / (1.0 - std::exp(-1.0));
    check.slack = check.y_max - check.bound;
    return check;
}

std::vector<std::string> check_record(const DiagnosticsRecord& rec, double initial_mass, double v_bound,
                                      double ball_volume) {
    std::vector<std::string> violations;
    if (std::abs(rec.mass - initial_mass) > 1e-10 * std::abs(initial_mass))
        violations.push_back("mass-drift");
    if (rec.v_max > v_bound + 1e-9) violations.push_back("max-principle");
    if (rec.entropy < -ball_volume / std::exp(1.0) - 1e-9) violations.push_back("entropy-floor");
    return violations;
}

}  // namespace ctc
