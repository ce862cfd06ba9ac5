#pragma once

#include "ctc/field.hpp"

#include <variant>

namespace ctc {

// Discrete radial differential operators in conservative flux form. All face
// gradients carry the metric weight omega_{n-1} r^{n-1} through the grid's
// face areas, so that cell sums telescope exactly: this is what turns mass
// conservation and the no-flux condition into exact discrete identities.
//
// Symmetry at r = 0 is automatic (the innermost face area vanishes). At the
// outer face, Dirichlet data enters through a one-sided quadratic ghost
// stencil (second-order face gradient, tridiagonal structure preserved).

struct DirichletAtOuter {
    double value = 0.0;
};
struct NeumannZeroAtOuter {};
using OuterBc = std::variant<DirichletAtOuter, NeumannZeroAtOuter>;

enum class FluxScheme { upwind, centered };

/// Tridiagonal system A x = b with sub/main/super diagonals of length M
/// (sub[0] and super[M-1] are ignored).
struct TridiagonalSystem {
    Array sub, diag, super, rhs;

    int size() const { return static_cast<int>(diag.size()); }
    /// b with x substituted; used by residual checks.
    Array multiply(const Eigen::Ref<const Array>& x) const;
};

/// Thomas algorithm. Throws SolverFailure on a vanishing pivot. The assembled
/// systems in this project are strictly diagonally dominant, so the
/// factorization is stable without pivoting.
Array solve_tridiagonal(const TridiagonalSystem& sys);

/// Flux-form radial Laplacian (div of the metric-weighted gradient divided by
/// cell volume). f_r(0) = 0 is built in; the outer face uses either a
/// quadratic Dirichlet ghost or a zero-Neumann flux.
RadialField laplacian_radial(const RadialField& f, const OuterBc& bc);

/// Face-valued drift velocity a = F_eps'(u) v_r of the taxis term, length
/// M+1; zero at both end faces (no-flux pairing at r = R, metric zero at 0).
Array drift_face_velocity(const RadialField& u, const RadialField& v, double eps);

/// div( u F_eps'(u) grad v ) in conservative face-flux form. The face value
/// of u is either upwinded by the sign of v_r (positivity-friendly,
/// first-order) or centered (second-order). End-face fluxes vanish, so the
/// integral of the result is exactly zero.
RadialField drift_flux_divergence(const RadialField& u, const RadialField& v, double eps,
                                  FluxScheme scheme = FluxScheme::upwind);

/// Face-valued derivative f_r, length M+1: 0 at r=0 (radial symmetry),
/// central differences at interior faces, one-sided second order at r=R.
Array gradient_radial(const RadialField& f);

/// Cell-centered derivative estimate: central differences inside, one-sided
/// second-order at both end cells. Used by quadrature-based diagnostics.
Array gradient_at_centers(const RadialField& f);

/// |D^2 ln v|^2 at cell centers for a radial field v > 0:
/// (w_rr)^2 + (n-1)(w_r / r)^2 with w = ln v. At the innermost cell the
/// ratio w_r/r is replaced by its symmetric limit w_rr(0) (L'Hopital).
/// Throws std::invalid_argument if v is not strictly positive.
RadialField hessian_log_norm_sq(const RadialField& v);

// One-sided boundary evaluation at r = R (h = grid spacing, cells indexed
// from the inside; all second-order or better on smooth data).

/// Quadratic extrapolation of a cell field to the outer face.
double extrapolate_to_outer(const RadialField& f);
/// One-sided derivative at R from the last three cells.
double outer_derivative(const RadialField& f);
/// One-sided derivative at R from the Dirichlet face value + three cells.
double outer_derivative(const RadialField& f, double face_value);
/// One-sided second derivative at R from the face value + three cells.
double outer_second_derivative(const RadialField& f, double face_value);

// Assembly helpers shared by the evolution and stationary solvers; keeping a
// single discretization of the Dirichlet boundary is what makes the computed
// steady states consistent across modules.

/// System for  V_i q_i x_i - [A x_r]_{faces} = V_i s_i  with Dirichlet value
/// d at r = R and symmetry at r = 0, i.e. the FV form of -Lap x + q x = s.
TridiagonalSystem assemble_helmholtz_dirichlet(const RadialGrid& grid, const Eigen::Ref<const Array>& q,
                                               const Eigen::Ref<const Array>& s, double dirichlet_value);

/// System for  V_i q_i x_i - [A (x_r - a x)]_{faces} = V_i s_i  with zero
/// total flux at both end faces (the discrete no-flux condition of the
/// u-equation). Column sums equal V_i q_i, hence solving with q = 1/dt
/// conserves sum(V x) exactly.
TridiagonalSystem assemble_drift_diffusion_noflux(const RadialGrid& grid, const Eigen::Ref<const Array>& face_velocity,
                                                  double q, const Eigen::Ref<const Array>& s, FluxScheme scheme);

}  // namespace ctc
