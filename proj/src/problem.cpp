#include "detour/problem.hpp"

#include <algorithm>
#include <cmath>

#include "detour/error.hpp"

namespace detour {

std::pair<Point, double> covering_ball(const Space&, const Curve& curve) {
  const std::size_t n = curve.dim();
  Point lo(std::vector<double>(n, kInfinity));
  Point hi(std::vector<double>(n, -kInfinity));
  const auto extend = [&](const Point& p, double pad) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], p[i] - pad);
      hi[i] = std::max(hi[i], p[i] + pad);
    }
  };
  for (const Piece& piece : curve.pieces()) {
    if (const auto* arc = std::get_if<ArcPiece>(&piece.shape)) {
      extend(arc->center, arc->radius);
    } else {
      extend(piece.start(), 0.0);
      extend(piece.end(), 0.0);
    }
  }
  Point center(n);
  double half_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    center[i] = 0.5 * (lo[i] + hi[i]);
    half_diag += 0.25 * (hi[i] - lo[i]) * (hi[i] - lo[i]);
  }
  // The euclidean half-diagonal bounds every shipped metric from above.
  return {center, std::sqrt(half_diag) * (1.0 + 1e-12) + 1e-9};
}

std::vector<Obstacle> relevant_obstacles(const RepairProblem& problem, const Curve& curve) {
  if (problem.obstacles.is_finite()) return problem.obstacles.all(problem.space);
  const auto [center, radius] = covering_ball(problem.space, curve);
  return problem.obstacles.query(problem.space, center, radius);
}

void require_well_posed(const RepairProblem& problem) {
  const Space& space = problem.space;
  const Point& x = problem.start();
  const Point& y = problem.end();
  space.require_compatible(x);
  if (!(problem.domain.space() == space)) {
    throw Error(ErrorCode::kDimensionMismatch, "domain and problem live in different spaces");
  }
  if (x == y) throw Error(ErrorCode::kDegenerateInput, "path endpoints coincide");
  if (!space.has_connected_spheres()) {
    throw Error(ErrorCode::kHypothesisViolated,
                "spheres in " + std::string(to_string(space.kind())) + "(" +
                    std::to_string(space.dim()) +
                    ") are two-point sets {x - r, x + r}, not path-connected");
  }
  const Options& opt = problem.options;
  if (!(opt.delta_fraction > 0.0 && opt.delta_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta_fraction must lie in (0, 1)");
  }
  if (opt.samples < 2) throw Error(ErrorCode::kInvalidArgument, "samples must be at least 2");

  const std::vector<Obstacle> obstacles = relevant_obstacles(problem, problem.path);
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const Point& m = obstacles[i].point;
    space.require_compatible(m);
    interior_radius(problem.domain, m);
    if (m == x || m == y) {
      throw Error(ErrorCode::kEndpointOnObstacle,
                  "path endpoint " + format_point(m) + " is an obstacle");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (obstacles[j].point == m) {
        throw Error(ErrorCode::kDuplicateObstacle, format_point(m) + " is listed twice");
      }
    }
  }

  const int n = std::max(opt.samples, 2);
  const Curve& path = problem.path;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 1 == n) ? path.t_hi()
                                  : path.t_lo() + (path.t_hi() - path.t_lo()) * i / (n - 1);
    const Point p = path.evaluate(t);
    if (!contains(problem.domain, p)) {
      throw Error(ErrorCode::kPathOutsideDomain, "path leaves U at " + format_point(p));
    }
  }
  for (const Piece& piece : path.pieces()) {
    if (!contains(problem.domain, piece.start())) {
      throw Error(ErrorCode::kPathOutsideDomain, "path leaves U at " + format_point(piece.start()));
    }
  }
}

}  // namespace detour
