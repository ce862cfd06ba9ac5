#pragma once

#include "ctc/field.hpp"

#include <string>
#include <vector>

namespace ctc {

/// Model parameters of the chemotaxis-consumption system on B_R(0):
/// dimension n >= 2, radius R > 0, prescribed boundary signal value
/// v_star >= 0, and the taxis regularization parameter eps in [0, 1).
struct ModelParams {
    int dim = 2;
    double radius = 1.0;
    double v_star = 1.0;
    double eps = 0.0;
};

/// Validates the parameter invariants; throws std::invalid_argument naming
/// the violated constraint.
ModelParams make_params(int dim, double radius, double v_star, double eps);

/// Throws GridMismatch unless params and grid agree on (n, R).
void require_consistent(const ModelParams& params, const RadialGrid& grid);

/// Saturating taxis regularization F_eps(xi) = xi / (1 + eps xi) for xi >= 0.
/// F_0 is the identity; 0 <= F_eps(xi) <= min(xi, 1/eps) for eps > 0.
double f_eps(double xi, double eps);

/// F_eps'(xi) = 1 / (1 + eps xi)^2, in (0, 1].
double f_eps_prime(double xi, double eps);

Array f_eps(const Eigen::Ref<const Array>& xi, double eps);
Array f_eps_prime(const Eigen::Ref<const Array>& xi, double eps);

/// Initial data (u0, v0) for the evolution problem. Required: u0 >= 0 with
/// positive total mass; v0 > 0 with v0 = v_star at r = R (checked through
/// the one-sided quadratic extrapolant, since no cell center sits at R).
struct InitialData {
    RadialField u0;
    RadialField v0;
};

struct ValidationIssue {
    std::string name;    // short machine-friendly tag, e.g. "u0-zero-mass"
    std::string detail;  // human-readable explanation
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string str() const;
};

/// Tolerance on |extrapolated v0(R) - v_star| used by validate_initial.
inline constexpr double kBoundaryCompatTol = 1e-10;

ValidationReport validate_initial(const InitialData& data, const ModelParams& params);

/// Throws std::invalid_argument listing every violation if validation fails.
void require_valid_initial(const InitialData& data, const ModelParams& params);

}  // namespace ctc
