#pragma once

#include <vector>

#include "detour/curve.hpp"
#include "detour/obstacles.hpp"
#include "detour/point.hpp"
#include "detour/space.hpp"

namespace detour {

enum class SpliceExtent {
  kTightest,  // crossings nearest the obstacle hits
  kWidest,    // inf of entry crossings, sup of exit crossings
};

enum class PunctureMode {
  kScheduled,  // one pass over the hit schedule
  kIterative,  // remove one obstacle at a time, re-running on the output
};

struct Options {
  double delta_fraction = 0.5;
  double tol_root = 1e-10;
  double tol_boundary = 1e-9;
  // Distance at or below which a path point counts as hitting an obstacle.
  double tol_hit = 1e-12;
  int samples = 4096;
  SpliceExtent splice_extent = SpliceExtent::kTightest;
  PunctureMode mode = PunctureMode::kScheduled;
};

struct RepairProblem {
  Space space;
  Domain domain;
  Curve path;
  ObstacleSet obstacles;
  Options options;

  const Point& start() const { return path.front(); }
  const Point& end() const { return path.back(); }
};

/// Obstacles that can matter for `curve`: the whole list for a finite set,
/// otherwise a region query over a ball covering the curve's trace.
std::vector<Obstacle> relevant_obstacles(const RepairProblem& problem, const Curve& curve);

/// Center and radius of a closed ball (in the problem's metric) covering the
/// trace of the curve.
std::pair<Point, double> covering_ball(const Space& space, const Curve& curve);

/// Throws on the first broken precondition: x = y (DegenerateInput), a space
/// without connected spheres (HypothesisViolated), obstacles outside int(U)
/// (NotInterior), endpoints in M (EndpointOnObstacle), repeated obstacles
/// (DuplicateObstacle), or a sampled path point outside U (PathOutsideDomain).
void require_well_posed(const RepairProblem& problem);

}  // namespace detour
