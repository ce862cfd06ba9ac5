#include "ctc/operators.hpp"

#include "ctc/errors.hpp"
#include "ctc/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ctc {

namespace {

// Face gradient of the quadratic ghost through (R, d), f_{M-1}, f_{M-2}:
// f_r(R) ~ ( (8/3) d - 3 f_{M-1} + (1/3) f_{M-2} ) / h.
double dirichlet_face_gradient(const Array& f, double d, double h) {
    const int m = static_cast<int>(f.size());
    return ((8.0 / 3.0) * d - 3.0 * f[m - 1] + (1.0 / 3.0) * f[m - 2]) / h;
}

}  // namespace

Array TridiagonalSystem::multiply(const Eigen::Ref<const Array>& x) const {
    const int m = size();
    Array y = diag * x;
    for (int i = 1; i < m; ++i) y[i] += sub[i] * x[i - 1];
    for (int i = 0; i + 1 < m; ++i) y[i] += super[i] * x[i + 1];
    return y;
}

Array solve_tridiagonal(const TridiagonalSystem& sys) {
    const int m = sys.size();
    if (m < 1) throw SolverFailure("solve_tridiagonal: empty system");
    Array c(m), d(m);
    double pivot = sys.diag[0];
    if (pivot == 0.0) throw SolverFailure("solve_tridiagonal: zero pivot in row 0");
    c[0] = (m > 1 ? sys.super[0] : 0.0) / pivot;
    d[0] = sys.rhs[0] / pivot;
    for (int i = 1; i < m; ++i) {
        pivot = sys.diag[i] - sys.sub[i] * c[i - 1];
        if (pivot == 0.0) throw SolverFailure("solve_tridiagonal: zero pivot in row " + std::to_string(i));
        c[i] = (i + 1 < m ? sys.super[i] : 0.0) / pivot;
        d[i] = (sys.rhs[i] - sys.sub[i] * d[i - 1]) / pivot;
    }
    Array x(m);
    x[m - 1] = d[m - 1];
    for (int i = m - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

RadialField laplacian_radial(const RadialField& f, const OuterBc& bc) {
    const RadialGrid& g = *f.grid;
    const int m = g.cells();
    const double h = g.spacing();
    const Array& area = g.face_areas();

    Array flux = Array::Zero(m + 1);  // metric-weighted face gradients A * f_r
    for (int j = 1; j < m; ++j) flux[j] = area[j] * (f.values[j] - f.values[j - 1]) / h;
    if (const auto* dir = std::get_if<DirichletAtOuter>(&bc))
        flux[m] = area[m] * dirichlet_face_gradient(f.values, dir->value, h);
    // NeumannZeroAtOuter: flux[m] stays 0.

    Array out = (flux.tail(m) - flux.head(m)) / g.volumes();
    return RadialField{f.grid, std::move(out)};
}

Array drift_face_velocity(const RadialField& u, const RadialField& v, double eps) {
    require_same_grid(u, v, "drift_face_velocity");
    const int m = u.grid->cells();
    const double h = u.grid->spacing();
    Array a = Array::Zero(m + 1);
    for (int j = 1; j < m; ++j) {
        const double u_face = 0.5 * (u.values[j - 1] + u.values[j]);
        a[j] = f_eps_prime(std::max(u_face, 0.0), eps) * (v.values[j] - v.values[j - 1]) / h;
    }
    return a;
}

RadialField drift_flux_divergence(const RadialField& u, const RadialField& v, double eps, FluxScheme scheme) {
    require_same_grid(u, v, "drift_flux_divergence");
    const RadialGrid& g = *u.grid;
    const int m = g.cells();
    const Array a = drift_face_velocity(u, v, eps);

    Array flux = Array::Zero(m + 1);  // A * (u-face value) * a
    for (int j = 1; j < m; ++j) {
        const double u_face = scheme == FluxScheme::upwind
                                  ? (a[j] >= 0.0 ? u.values[j - 1] : u.values[j])
                                  : 0.5 * (u.values[j - 1] + u.values[j]);
        flux[j] = g.face_areas()[j] * a[j] * u_face;
    }
    Array out = (flux.tail(m) - flux.head(m)) / g.volumes();
    return RadialField{u.grid, std::move(out)};
}

Array gradient_radial(const RadialField& f) {
    const RadialGrid& g = *f.grid;
    const int m = g.cells();
    const double h = g.spacing();
    Array d = Array::Zero(m + 1);
    for (int j = 1; j < m; ++j) d[j] = (f.values[j] - f.values[j - 1]) / h;
    d[m] = outer_derivative(f);
    return d;
}

Array gradient_at_centers(const RadialField& f) {
    const RadialGrid& g = *f.grid;
    const int m = g.cells();
    const double h = g.spacing();
    Array d(m);
    d[0] = (-3.0 * f.values[0] + 4.0 * f.values[1] - f.values[2]) / (2.0 * h);
    for (int i = 1; i + 1 < m; ++i) d[i] = (f.values[i + 1] - f.values[i - 1]) / (2.0 * h);
    d[m - 1] = (3.0 * f.values[m - 1] - 4.0 * f.values[m - 2] + f.values[m - 3]) / (2.0 * h);
    return d;
}

RadialField hessian_log_norm_sq(const RadialField& v) {
    if ((v.values <= 0.0).any()) throw std::invalid_argument("hessian_log_norm_sq: field must be strictly positive");
    const RadialGrid& g = *v.grid;
    const int m = g.cells();
    const double h = g.spacing();
    const double nm1 = g.dim() - 1;
    const Array w = v.values.log();

    Array out(m);
    // Innermost cell: reflected second difference; the w_r/r term degenerates
    // to the same symmetric limit w_rr(0).
    const double wrr0 = (w[1] - w[0]) / (h * h);
    out[0] = wrr0 * wrr0 + nm1 * wrr0 * wrr0;
    for (int i = 1; i + 1 < m; ++i) {
        const double wrr = (w[i - 1] - 2.0 * w[i] + w[i + 1]) / (h * h);
        const double wr = (w[i + 1] - w[i - 1]) / (2.0 * h);
        const double ratio = wr / g.centers()[i];
        out[i] = wrr * wrr + nm1 * ratio * ratio;
    }
    const double wrr_last = (2.0 * w[m - 1] - 5.0 * w[m - 2] + 4.0 * w[m - 3] - w[m - 4]) / (h * h);
    const double wr_last = (3.0 * w[m - 1] - 4.0 * w[m - 2] + w[m - 3]) / (2.0 * h);
    const double ratio_last = wr_last / g.centers()[m - 1];
    out[m - 1] = wrr_last * wrr_last + nm1 * ratio_last * ratio_last;
    return RadialField{v.grid, std::move(out)};
}

double extrapolate_to_outer(const RadialField& f) {
    const int m = f.size();
    return (15.0 * f.values[m - 1] - 10.0 * f.values[m - 2] + 3.0 * f.values[m - 3]) / 8.0;
}

double outer_derivative(const RadialField& f) {
    const int m = f.size();
    return (2.0 * f.values[m - 1] - 3.0 * f.values[m - 2] + f.values[m - 3]) / f.grid->spacing();
}

double outer_derivative(const RadialField& f, double face_value) {
    const int m = f.size();
    return ((46.0 / 15.0) * face_value - (15.0 / 4.0) * f.values[m - 1] + (5.0 / 6.0) * f.values[m - 2] -
            (3.0 / 20.0) * f.values[m - 3]) /
           f.grid->spacing();
}

double outer_second_derivative(const RadialField& f, double face_value) {
    const int m = f.size();
    const double h = f.grid->spacing();
    return ((24.0 / 5.0) * face_value - 8.0 * f.values[m - 1] + 4.0 * f.values[m - 2] - (4.0 / 5.0) * f.values[m - 3]) /
           (h * h);
}

TridiagonalSystem assemble_helmholtz_dirichlet(const RadialGrid& grid, const Eigen::Ref<const Array>& q,
                                               const Eigen::Ref<const Array>& s, double dirichlet_value) {
    const int m = grid.cells();
    const double h = grid.spacing();
    const Array& area = grid.face_areas();
    const Array& vol = grid.volumes();

    TridiagonalSystem sys{Array::Zero(m), Array::Zero(m), Array::Zero(m), Array::Zero(m)};
    sys.diag = vol * q;
    sys.rhs = vol * s;
    for (int j = 1; j < m; ++j) {  // interior faces
        sys.diag[j - 1] += area[j] / h;
        sys.super[j - 1] -= area[j] / h;
        sys.diag[j] += area[j] / h;
        sys.sub[j] -= area[j] / h;
    }
    // Outer face: quadratic Dirichlet ghost (consistent with laplacian_radial).
    sys.diag[m - 1] += 3.0 * area[m] / h;
    sys.sub[m - 1] -= area[m] / (3.0 * h);
    sys.rhs[m - 1] += area[m] * (8.0 / 3.0) * dirichlet_value / h;
    return sys;
}

TridiagonalSystem assemble_drift_diffusion_noflux(const RadialGrid& grid, const Eigen::Ref<const Array>& face_velocity,
                                                  double q, const Eigen::Ref<const Array>& s, FluxScheme scheme) {
    const int m = grid.cells();
    const double h = grid.spacing();
    const Array& area = grid.face_areas();
    const Array& vol = grid.volumes();

    TridiagonalSystem sys{Array::Zero(m), Array::Zero(m), Array::Zero(m), Array::Zero(m)};
    sys.diag = vol * q;
    sys.rhs = vol * s;
    // Interior faces carry T_j = x_r - a x; end faces carry zero total flux.
    for (int j = 1; j < m; ++j) {
        const double a = face_velocity[j];
        double w_left, w_right;  // face-value weights of x_{j-1}, x_j in a*x
        if (scheme == FluxScheme::upwind) {
            w_left = std::max(a, 0.0);
            w_right = std::min(a, 0.0);
        } else {
            w_left = 0.5 * a;
            w_right = 0.5 * a;
        }
        // Row j-1 takes +A_j T_j, row j takes -A_j T_j.
        sys.diag[j - 1] += area[j] * (1.0 / h + w_left);
        sys.super[j - 1] -= area[j] * (1.0 / h - w_right);
        sys.diag[j] += area[j] * (1.0 / h - w_right);
        sys.sub[j] -= area[j] * (1.0 / h + w_left);
    }
    return sys;
}

}  // namespace ctc
