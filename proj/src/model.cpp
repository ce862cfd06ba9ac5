#include "ctc/model.hpp"

#include "ctc/errors.hpp"
#include "ctc/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ctc {

ModelParams make_params(int dim, double radius, double v_star, double eps) {
    if (dim < 2) throw std::invalid_argument("ModelParams: dimension must satisfy n >= 2");
    if (!(radius > 0.0)) throw std::invalid_argument("ModelParams: radius must be positive");
    if (!(v_star >= 0.0)) throw std::invalid_argument("ModelParams: v_star must be nonnegative");
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("ModelParams: eps must lie in [0,1)");
    return ModelParams{dim, radius, v_star, eps};
}

void require_consistent(const ModelParams& params, const RadialGrid& grid) {
    if (params.dim != grid.dim() || params.radius != grid.radius())
        throw GridMismatch("ModelParams and RadialGrid disagree on (n, R)");
}

double f_eps(double xi, double eps) {
    if (!(xi >= 0.0)) throw std::invalid_argument("f_eps: xi must be nonnegative");
    return xi / (1.0 + eps * xi);
}

double f_eps_prime(double xi, double eps) {
    if (!(xi >= 0.0)) throw std::invalid_argument("f_eps_prime: xi must be nonnegative");
    const double denom = 1.0 + eps * xi;
    return 1.0 / (denom * denom);
}

Array f_eps(const Eigen::Ref<const Array>& xi, double eps) {
    if ((xi < 0.0).any()) throw std::invalid_argument("f_eps: xi must be nonnegative");
    return xi / (1.0 + eps * xi);
}

Array f_eps_prime(const Eigen::Ref<const Array>& xi, double eps) {
    if ((xi < 0.0).any()) throw std::invalid_argument("f_eps_prime: xi must be nonnegative");
    return (1.0 + eps * xi).square().inverse();
}

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i) os << "; ";
        os << issues[i].name << " (" << issues[i].detail << ")";
    }
    return os.str();
}

ValidationReport validate_initial(const InitialData& data, const ModelParams& params) {
    ValidationReport report;
    auto fail = [&](std::string name, std::string detail) {
        report.issues.push_back({std::move(name), std::move(detail)});
    };

    if (!same_grid(data.u0, data.v0)) {
        fail("grid-mismatch", "u0 and v0 live on different grids");
        return report;
    }
    if (data.u0.grid->dim() != params.dim || data.u0.grid->radius() != params.radius) {
        fail("grid-mismatch", "initial data grid disagrees with ModelParams (n, R)");
        return report;
    }
    if (!all_finite(data.u0)) fail("nonfinite-u0", "u0 contains NaN or Inf");
    if (!all_finite(data.v0)) fail("nonfinite-v0", "v0 contains NaN or Inf");
    if (!report.ok()) return report;

    if ((data.u0.values < 0.0).any()) fail("u0-negative", "u0 must be nonnegative everywhere");
    else if (!(integrate(data.u0) > 0.0)) fail("u0-zero-mass", "u0 must not be identically zero");

    if ((data.v0.values <= 0.0).any()) {
        fail("v0-nonpositive", "v0 must be strictly positive");
    } else {
        const double at_boundary = extrapolate_to_outer(data.v0);
        if (std::abs(at_boundary - params.v_star) > kBoundaryCompatTol) {
            std::ostringstream os;
            os << "v0 extrapolates to " << at_boundary << " at r = R but v_star = " << params.v_star;
            fail("v0-boundary-mismatch", os.str());
        }
    }
    return report;
}

void require_valid_initial(const InitialData& data, const ModelParams& params) {
    const ValidationReport report = validate_initial(data, params);
    if (!report.ok()) throw std::invalid_argument("invalid initial data: " + report.str());
}

}  // namespace ctc
