#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "detour/curve.hpp"
#include "detour/obstacles.hpp"
#include "detour/problem.hpp"
#include "detour/verify.hpp"

namespace detour {

/// Radii for one obstacle x_k.
struct RadiusEntry {
  Point obstacle;
  double epsilon = kInfinity;     // interior radius in U
  double isolation = kInfinity;   // δ̃: isolation radius in M
  double separation = kInfinity;  // r_k: distance to the nearest other active obstacle
  double formula = 0.0;           // ½·min{ε, δ̃, d(x_k, x), d(x_k, y), r_k}
  double delta = 0.0;             // working radius, delta_fraction · formula
};

struct DetourRadii {
  std::vector<RadiusEntry> entries;
};

struct HitRecord {
  Obstacle obstacle;
  double t_first = 0.0;  // t_k
  double t_last = 0.0;   // t'_k
};

/// Ordered obstacle hits. Each record's obstacle is hit first at t_first
/// after the previous record's t_last, and last at t_last; obstacles hit only
/// between a record's t_first and t_last are absorbed into that record.
struct HitSchedule {
  std::vector<HitRecord> records;
  std::optional<double> t_star;  // last parameter with γ(t) ∈ M
  std::vector<Obstacle> hit_set;  // M ∩ γ([t_x, t_y])

  std::size_t k_star() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

struct SpliceRecord {
  Point obstacle;
  double delta = 0.0;
  double t_entry = 0.0;  // t_{x'_k}
  double t_exit = 0.0;   // t_{x''_k}
  Point entry;
  Point exit;
  Curve arc;
};

struct PunctureResult {
  Curve curve;
  HitSchedule schedule;
  DetourRadii radii;
  std::vector<SpliceRecord> records;
  RepairReport report;
};

/// Returns a curve in U from `from` to `to` whose interior avoids M.
using DetourOracle = std::function<Curve(const Point& from, const Point& to)>;

/// ½·min{interior_radius(x0), d(z, x0)}: every path from x0 to z meets the
/// sphere of any radius in (0, δ0] around x0.
double prop_delta0(const Space& space, const Domain& domain, const Point& x0, const Point& z);

DetourRadii compute_radii(const RepairProblem& problem, std::span<const Obstacle> active);

HitSchedule hit_schedule(const RepairProblem& problem);

/// Repairs a problem with exactly one obstacle.
Curve puncture_one(const RepairProblem& problem);

PunctureResult puncture(const RepairProblem& problem);

/// Asks the oracle for a path from obstacle `from` to obstacle `to` and trims
/// it to the part between the two working spheres.
Curve splice_via_oracle(const RepairProblem& problem, const DetourOracle& oracle,
                        const Point& from, const Point& to);

}  // namespace detour
