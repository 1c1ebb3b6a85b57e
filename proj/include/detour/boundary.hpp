#pragma once

#include "detour/curve.hpp"
#include "detour/point.hpp"
#include "detour/space.hpp"

namespace detour {

inline constexpr double kDefaultBoundaryTolerance = 1e-9;

/// A path on the sphere d(., center) = radius from a to b, both of which
/// must lie on that sphere within `tol`. Endpoints of the result are bit
/// copies of a and b.
///
/// Euclidean spheres are traversed along the great-circle arc in the plane
/// of (a - center, b - center). For antipodal endpoints the plane is
/// completed with the lowest-index basis vector not parallel to a - center.
/// Chebyshev squares are walked along the shorter side of the perimeter,
/// counterclockwise on ties.
///
/// One-dimensional spheres are the two-point sets {c - r, c + r}; joining two
/// distinct points on them throws HypothesisViolated.
Curve boundary_path(const Space& space, const Point& center, double radius, const Point& a,
                    const Point& b, double tol = kDefaultBoundaryTolerance);

}  // namespace detour
