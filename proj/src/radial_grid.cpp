#include "ctc/radial_grid.hpp"

#include "ctc/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ctc {

double unit_sphere_area(int dim) {
    const double half = 0.5 * static_cast<double>(dim);
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

RadialGrid::RadialGrid(int dim, double radius, int cells)
    : dim_(dim), radius_(radius), cells_(cells) {
    if (dim < 2) throw std::invalid_argument("RadialGrid: dimension must satisfy n >= 2, got n = " + std::to_string(dim));
    if (!(radius > 0.0)) throw std::invalid_argument("RadialGrid: radius must be positive");
    if (cells < 8) throw std::invalid_argument("RadialGrid: cell count must satisfy M >= 8, got M = " + std::to_string(cells));

    spacing_ = radius / cells;
    sphere_area_ = unit_sphere_area(dim);
    ball_volume_ = sphere_area_ * std::pow(radius, dim) / dim;

    faces_ = Array::LinSpaced(cells + 1, 0.0, radius);
    faces_[0] = 0.0;
    faces_[cells] = radius;  // pin endpoints exactly
    centers_ = 0.5 * (faces_.head(cells) + faces_.tail(cells));

    face_areas_ = sphere_area_ * faces_.pow(dim - 1);
    volumes_ = (sphere_area_ / dim) * (faces_.tail(cells).pow(dim) - faces_.head(cells).pow(dim));
}

GridPtr make_grid(int dim, double radius, int cells) {
    return std::make_shared<const RadialGrid>(dim, radius, cells);
}

double integrate(const RadialGrid& grid, const Eigen::Ref<const Array>& cell_values) {
    if (cell_values.size() != grid.cells())
        throw GridMismatch("integrate: field has " + std::to_string(cell_values.size()) +
                           " values but grid has " + std::to_string(grid.cells()) + " cells");
    return (cell_values * grid.volumes()).sum();
}

}  // namespace ctc
