#pragma once

#include "ctc/radial_grid.hpp"

#include <functional>

namespace ctc {

/// A scalar profile sampled at cell centers (length M) together with a handle
/// to its grid. Plain data; freely copyable and sendable between threads.
struct RadialField {
    GridPtr grid;
    Array values;

    int size() const { return static_cast<int>(values.size()); }
};

RadialField make_field(GridPtr grid, double constant);
RadialField make_field(GridPtr grid, const std::function<double(double)>& profile);
RadialField make_field(GridPtr grid, Array values);

bool same_grid(const RadialField& a, const RadialField& b);
/// Throws GridMismatch unless both fields live on the same grid layout.
void require_same_grid(const RadialField& a, const RadialField& b, const char* where);
/// Throws GridMismatch unless the field matches the grid and has M values.
void require_on_grid(const RadialField& f, const RadialGrid& grid, const char* where);

bool all_finite(const RadialField& f);

double integrate(const RadialField& f);

}  // namespace ctc
