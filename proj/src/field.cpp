#include "ctc/field.hpp"

#include "ctc/errors.hpp"

#include <string>
#include <utility>

namespace ctc {

RadialField make_field(GridPtr grid, double constant) {
    Array v = Array::Constant(grid->cells(), constant);
    return RadialField{std::move(grid), std::move(v)};
}

RadialField make_field(GridPtr grid, const std::function<double(double)>& profile) {
    Array v(grid->cells());
    const Array& r = grid->centers();
    for (int i = 0; i < grid->cells(); ++i) v[i] = profile(r[i]);
    return RadialField{std::move(grid), std::move(v)};
}

RadialField make_field(GridPtr grid, Array values) {
    if (values.size() != grid->cells())
        throw GridMismatch("make_field: " + std::to_string(values.size()) + " values for a grid with " +
                           std::to_string(grid->cells()) + " cells");
    return RadialField{std::move(grid), std::move(values)};
}

bool same_grid(const RadialField& a, const RadialField& b) {
    return a.grid && b.grid && a.grid->same_layout(*b.grid) && a.values.size() == b.values.size();
}

void require_same_grid(const RadialField& a, const RadialField& b, const char* where) {
    if (!same_grid(a, b)) throw GridMismatch(std::string(where) + ": fields live on different grids");
}

void require_on_grid(const RadialField& f, const RadialGrid& grid, const char* where) {
    if (!f.grid || !f.grid->same_layout(grid) || f.values.size() != grid.cells())
        throw GridMismatch(std::string(where) + ": field does not match the grid");
}

bool all_finite(const RadialField& f) {
    return f.values.isFinite().all();
}

double integrate(const RadialField& f) {
    return integrate(*f.grid, f.values);
}

}  // namespace ctc
