#pragma once

#include <string>
#include <vector>

#include "detour/curve.hpp"
#include "detour/problem.hpp"

namespace detour {

struct CrossingCount {
  Point obstacle;
  double radius = 0.0;
  int count = 0;
};

/// Outcome of checking a curve against a problem. Every field is a function
/// of (curve, problem, samples) alone.
struct RepairReport {
  int samples = 0;
  bool endpoints_ok = false;
  double continuity_modulus = 0.0;
  double min_clearance = kInfinity;
  bool containment_ok = false;
  // Crossings of each nearby obstacle's probe sphere, whose radius is
  // ½·min{ε, δ̃, d(m, x), d(m, y)}.
  std::vector<CrossingCount> crossing_counts;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

/// Samples the curve on a uniform grid of `samples` parameters plus every
/// piece joint. Failures are recorded in `violations`, never thrown.
RepairReport validate(const Curve& curve, const RepairProblem& problem, int samples);

/// Counts sign changes of d(γ(t), center) - radius over a uniform grid. Runs
/// of zero residual count once.
int brute_force_crossings(const Curve& curve, const Space& space, const Point& center,
                          double radius, int samples);

enum class Violation {
  kBoundaryNotPathConnected,
  kObstacleNotInterior,
  kEndpointOnObstacle,
  kDuplicateObstacle,
  kPathEscapesDomain,
  kEndpointsCoincide,
};

std::string to_string(Violation v);

std::vector<Violation> check_hypotheses(const RepairProblem& problem);

}  // namespace detour
