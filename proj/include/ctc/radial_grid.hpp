#pragma once

#include <Eigen/Core>

#include <memory>

namespace ctc {

using Array = Eigen::ArrayXd;

/// Cell-centered finite-volume discretization of the ball B_R(0) in R^n,
/// reduced to the radial coordinate. Faces r_{i+1/2} are uniformly spaced
/// with r_{1/2} = 0 and r_{M+1/2} = R; centers sit at face midpoints, so no
/// node ever touches the coordinate singularity at r = 0 (the innermost face
/// carries zero metric weight instead). Cell volumes are the exact shell
/// volumes omega_{n-1} (r_+^n - r_-^n) / n, hence they telescope to |B_R(0)|.
///
/// Immutable after construction; safe to share across threads.
class RadialGrid {
public:
    /// Uniform grid; rejects n < 2, R <= 0, M < 8.
    RadialGrid(int dim, double radius, int cells);

    int dim() const { return dim_; }
    double radius() const { return radius_; }
    int cells() const { return cells_; }
    double spacing() const { return spacing_; }

    const Array& centers() const { return centers_; }       // length M
    const Array& faces() const { return faces_; }           // length M+1
    const Array& volumes() const { return volumes_; }       // length M
    const Array& face_areas() const { return face_areas_; }  // omega_{n-1} r^{n-1}, length M+1

    /// Surface area of the unit sphere S^{n-1} (cached, from the Gamma function).
    double sphere_area() const { return sphere_area_; }
    /// |B_R(0)| = omega_{n-1} R^n / n.
    double ball_volume() const { return ball_volume_; }
    /// |dB_R(0)| = omega_{n-1} R^{n-1}.
    double boundary_area() const { return face_areas_[cells_]; }

    bool same_layout(const RadialGrid& other) const {
        return dim_ == other.dim_ && radius_ == other.radius_ && cells_ == other.cells_;
    }

private:
    int dim_;
    double radius_;
    int cells_;
    double spacing_;
    double sphere_area_;
    double ball_volume_;
    Array centers_, faces_, volumes_, face_areas_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int dim, double radius, int cells);

/// Surface area of the unit sphere S^{n-1} in R^n.
double unit_sphere_area(int dim);

/// Metric-weighted midpoint quadrature: sum_i f_i vol_i, realizing
/// int_Omega f = omega_{n-1} int_0^R r^{n-1} f(r) dr. Exact for cell-wise
/// constants. Throws GridMismatch on length mismatch.
double integrate(const RadialGrid& grid, const Eigen::Ref<const Array>& cell_values);

}  // namespace ctc
