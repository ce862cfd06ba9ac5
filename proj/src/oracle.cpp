#include "ctc/oracle.hpp"

#include "ctc/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ctc {

namespace {

struct DenseSolution {
    std::vector<double> r, v, w;  // w = v_r
    double r_start = 0.0;
    double series_coeff = 0.0;  // (alpha/n) s e^s, for r < r_start
    double center_value = 0.0;
};

// v'' = alpha v e^v - (n-1)/r v', integrated as (v, w = v_r).
DenseSolution integrate_outward(int dim, double radius, double alpha, double s, int steps) {
    DenseSolution sol;
    const double r0 = 1e-6 * radius;
    const double c = alpha / dim * s * std::exp(s);  // v_r ~ c r near 0
    sol.r_start = r0;
    sol.series_coeff = c;
    sol.center_value = s;

    double r = r0;
    double v = s + 0.5 * c * r0 * r0;
    double w = c * r0;
    const double dr = (radius - r0) / steps;

    auto fv = [](double wv) { return wv; };
    auto fw = [&](double rr, double vv, double wv) {
        return alpha * vv * std::exp(vv) - (dim - 1) / rr * wv;
    };

    sol.r.reserve(steps + 1);
    sol.v.reserve(steps + 1);
    sol.w.reserve(steps + 1);
    sol.r.push_back(r);
    sol.v.push_back(v);
    sol.w.push_back(w);
    for (int k = 0; k < steps; ++k) {
        const double k1v = fv(w), k1w = fw(r, v, w);
        const double k2v = fv(w + 0.5 * dr * k1w), k2w = fw(r + 0.5 * dr, v + 0.5 * dr * k1v, w + 0.5 * dr * k1w);
        const double k3v = fv(w + 0.5 * dr * k2w), k3w = fw(r + 0.5 * dr, v + 0.5 * dr * k2v, w + 0.5 * dr * k2w);
        const double k4v = fv(w + dr * k3w), k4w = fw(r + dr, v + dr * k3v, w + dr * k3w);
        v += dr / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        w += dr / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        r = r0 + (k + 1) * dr;
        sol.r.push_back(r);
        sol.v.push_back(v);
        sol.w.push_back(w);
    }
    return sol;
}

double sample(const DenseSolution& sol, double r) {
    if (r <= sol.r_start)
        return sol.center_value + 0.5 * sol.series_coeff * r * r;
    const double dr = sol.r[1] - sol.r[0];
    std::size_t k = static_cast<std::size_t>((r - sol.r_start) / dr);
    if (k + 1 >= sol.r.size()) k = sol.r.size() - 2;
    const double t = (r - sol.r[k]) / dr;
    // Cubic Hermite from (v, v_r) at the bracketing nodes.
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * sol.v[k] + h10 * dr * sol.w[k] + h01 * sol.v[k + 1] + h11 * dr * sol.w[k + 1];
}

}  // namespace

RadialField shoot_stationary(GridPtr grid, double alpha, double v_star, ShootingConfig cfg) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("shoot_stationary: alpha must be nonnegative");
    if (!(v_star >= 0.0)) throw std::invalid_argument("shoot_stationary: v_star must be nonnegative");
    if (cfg.s_hi < 0.0) cfg.s_hi = v_star;
    if (!(0.0 <= cfg.s_lo && cfg.s_lo <= cfg.s_hi && cfg.s_hi <= v_star))
        throw std::invalid_argument("shoot_stationary: bracket must satisfy 0 <= s_lo <= s_hi <= v_star");

    if (v_star == 0.0) return make_field(grid, 0.0);

    const int n = grid->dim();
    const double radius = grid->radius();
    auto boundary_miss = [&](double s) {
        const double at_R = integrate_outward(n, radius, alpha, s, cfg.ode_steps).v.back();
        // A finite-radius blow-up of the outward integration means s was too
        // large; treat it as an overshoot so the bisection backs off.
        if (!std::isfinite(at_R)) return std::numeric_limits<double>::infinity();
        return at_R - v_star;
    };

    // The boundary value is strictly increasing in the center value s.
    double lo = cfg.s_lo, hi = cfg.s_hi;
    double miss_hi = boundary_miss(hi);
    if (miss_hi < -cfg.boundary_tol) {
        hi = v_star;  // widen once to the mathematical upper bound
        miss_hi = boundary_miss(hi);
        if (miss_hi < -cfg.boundary_tol)
            throw SolverFailure("shoot_stationary: bracket failure, v(R; s_hi) < v_star even at s_hi = v_star");
    }
    double s = hi, miss = miss_hi;
    if (std::abs(boundary_miss(lo)) <= cfg.boundary_tol) {
        s = lo;
    } else {
        for (int iter = 0; iter < cfg.max_bisect; ++iter) {
            s = 0.5 * (lo + hi);
            miss = boundary_miss(s);
            if (miss < 0.0)
                lo = s;
            else
                hi = s;
            if (std::abs(miss) <= cfg.boundary_tol) break;
        }
        if (std::abs(miss) > cfg.boundary_tol)
            throw SolverFailure("shoot_stationary: bisection on the center value did not meet the boundary tolerance");
    }

    const DenseSolution sol = integrate_outward(n, radius, alpha, s, cfg.ode_steps);
    Array values(grid->cells());
    for (int i = 0; i < grid->cells(); ++i) values[i] = sample(sol, grid->centers()[i]);
    return RadialField{std::move(grid), std::move(values)};
}

double fine_quadrature(const std::function<double(double)>& f, const RadialGrid& grid, int factor) {
    if (factor < 1) throw std::invalid_argument("fine_quadrature: factor must be >= 1");
    long intervals = static_cast<long>(factor) * grid.cells();
    if (intervals % 2 != 0) ++intervals;
    const double radius = grid.radius();
    const double h = radius / intervals;
    const int n = grid.dim();
    auto g = [&](double r) { return std::pow(r, n - 1) * f(r); };

    double acc = g(0.0) + g(radius);
    for (long k = 1; k < intervals; ++k) acc += (k % 2 ? 4.0 : 2.0) * g(k * h);
    return grid.sphere_area() * acc * h / 3.0;
}

}  // namespace ctc
