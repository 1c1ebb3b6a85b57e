#include "detour/boundary.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "detour/error.hpp"

namespace detour {

namespace {

constexpr double kPi = std::numbers::pi;

void require_on_sphere(const Space& space, const Point& center, double radius, const Point& p,
                       double tol) {
  space.require_compatible(p);
  if (std::abs(distance(space, center, p) - radius) > tol) {
    throw Error(ErrorCode::kOffBoundary, format_point(p) + " is not on the sphere of radius " +
                                             std::to_string(radius) + " around " +
                                             format_point(center));
  }
}

Curve euclidean_arc(const Space& space, const Point& center, double radius, const Point& a,
                    const Point& b) {
  const Point ua = a - center;
  const Point ub = b - center;
  const Point u = (1.0 / euclidean_norm(ua)) * ua;
  const Point w = (1.0 / euclidean_norm(ub)) * ub;
  const double cosine = dot(u, w);
  Point perp = w - cosine * u;
  double perp_norm = euclidean_norm(perp);
  double sweep = std::atan2(perp_norm, cosine);

  // Antipodal endpoints (or a perpendicular part lost to rounding): complete
  // the plane with the first basis vector that is not parallel to u.
  if (perp_norm <= 1e-12) {
    for (std::size_t i = 0; i < u.dim(); ++i) {
      if (std::abs(u[i]) >= 1.0 - 1e-9) continue;
      Point e(u.dim());
      e[i] = 1.0;
      perp = e - u[i] * u;
      perp_norm = euclidean_norm(perp);
      break;
    }
    sweep = kPi;
  }
  Point normal = (1.0 / perp_norm) * perp;
  std::vector<PieceShape> shapes{make_arc(center, radius, a, b, std::move(normal), sweep)};
  return Curve::from_shapes(space, std::move(shapes));
}

// Position of p along the perimeter of the square of half-side r around c,
// counterclockwise from the corner (c.x + r, c.y - r). Total length 8r.
double perimeter_position(const Point& c, double r, const Point& p) {
  const double dx = p[0] - c[0];
  const double dy = p[1] - c[1];
  if (std::abs(dx) >= std::abs(dy)) {
    if (dx > 0.0) return std::clamp(dy + r, 0.0, 2.0 * r);
    return 4.0 * r + std::clamp(r - dy, 0.0, 2.0 * r);
  }
  if (dy > 0.0) return 2.0 * r + std::clamp(r - dx, 0.0, 2.0 * r);
  return 6.0 * r + std::clamp(dx + r, 0.0, 2.0 * r);
}

Curve chebyshev_walk(const Space& space, const Point& center, double r, const Point& a,
                     const Point& b) {
  const double perimeter = 8.0 * r;
  const double pa = perimeter_position(center, r, a);
  const double pb = perimeter_position(center, r, b);
  double ccw = std::fmod(pb - pa, perimeter);
  if (ccw < 0.0) ccw += perimeter;
  const double cw = perimeter - ccw;
  const bool counterclockwise = ccw <= cw;

  const std::array<Point, 4> corners{Point{center[0] + r, center[1] - r},
                                     Point{center[0] + r, center[1] + r},
                                     Point{center[0] - r, center[1] + r},
                                     Point{center[0] - r, center[1] - r}};
  std::vector<Point> waypoints{a};
  const double travel = counterclockwise ? ccw : cw;
  // Corners strictly between a and b in the walking direction.
  for (int k = 0; k < 8; ++k) {
    double corner_pos;
    if (counterclockwise) {
      corner_pos = (std::floor(pa / (2.0 * r)) + 1 + k) * 2.0 * r;
      if (corner_pos - pa >= travel) break;
    } else {
      corner_pos = (std::ceil(pa / (2.0 * r)) - 1 - k) * 2.0 * r;
      if (pa - corner_pos >= travel) break;
    }
    long idx = std::lround(corner_pos / (2.0 * r)) % 4;
    if (idx < 0) idx += 4;
    if (!(corners[idx] == waypoints.back())) waypoints.push_back(corners[idx]);
  }
  if (!(waypoints.back() == b)) waypoints.push_back(b);
  return Curve::polyline(space, waypoints);
}

}  // namespace

Curve boundary_path(const Space& space, const Point& center, double radius, const Point& a,
                    const Point& b, double tol) {
  space.require_compatible(center);
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sphere radius must be positive");
  require_on_sphere(space, center, radius, a, tol);
  require_on_sphere(space, center, radius, b, tol);
  if (a == b) return Curve::constant(a);
  if (!space.has_connected_spheres()) {
    throw Error(ErrorCode::kHypothesisViolated,
                "spheres of a one-dimensional space are the two-point sets {c - r, c + r} and "
                "are not path-connected");
  }
  if (space.kind() == SpaceKind::kChebyshev) return chebyshev_walk(space, center, radius, a, b);
  return euclidean_arc(space, center, radius, a, b);
}

}  // namespace detour
