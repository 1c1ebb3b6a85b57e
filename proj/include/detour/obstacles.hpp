#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "detour/point.hpp"
#include "detour/space.hpp"

namespace detour {

/// A removed point together with its isolation radius: the largest r such
/// that B(point, r) meets the obstacle set only in `point`.
struct Obstacle {
  Point point;
  double isolation = kInfinity;
};

struct LatticeSpec {
  double step = 1.0;
  Point origin;
};

/// Returns every obstacle inside the closed ball B̄(center, radius).
using RegionQuery = std::function<std::vector<Obstacle>(const Point& center, double radius)>;

/// The removed set M: either a finite list of points, or a closed discrete
/// set reached through a region query.
class ObstacleSet {
 public:
  ObstacleSet() = default;

  static ObstacleSet finite(std::vector<Point> points);
  static ObstacleSet generator(RegionQuery query);
  /// origin + step * Z^n. Isolation radius is `step` in every shipped metric.
  static ObstacleSet lattice(const Space& space, double step, Point origin);

  bool is_finite() const noexcept { return !query_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::optional<LatticeSpec>& lattice_spec() const noexcept { return lattice_; }

  /// Obstacles in B̄(center, radius). Finite sets derive isolation radii from
  /// the full list, so a single obstacle is isolated at kInfinity.
  std::vector<Obstacle> query(const Space& space, const Point& center, double radius) const;

  /// Every obstacle of a finite set with its isolation radius.
  std::vector<Obstacle> all(const Space& space) const;

 private:
  std::vector<Point> points_;
  RegionQuery query_;
  std::optional<LatticeSpec> lattice_;
};

}  // namespace detour
