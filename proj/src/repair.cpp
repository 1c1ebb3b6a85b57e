#include "detour/repair.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detour/boundary.hpp"
#include "detour/error.hpp"

namespace detour {

namespace {

struct Hit {
  double t;
  std::size_t obstacle;
};

double piece_time(const Piece& p, double s) {
  if (s <= 0.0) return p.t0;
  if (s >= 1.0) return p.t1;
  return p.t0 + s * (p.t1 - p.t0);
}

// Local parameter of the point of a shape nearest to m (exact for segments
// and euclidean arcs).
double nearest_local(const PieceShape& shape, const Point& m) {
  if (const auto* seg = std::get_if<LinearPiece>(&shape)) {
    if (m == seg->from) return 0.0;
    if (m == seg->to) return 1.0;
    const Point d = seg->to - seg->from;
    const double len2 = dot(d, d);
    if (!(len2 > 0.0)) return 0.0;
    return std::clamp(dot(m - seg->from, d) / len2, 0.0, 1.0);
  }
  if (const auto* arc = std::get_if<ArcPiece>(&shape)) {
    if (m == arc->from) return 0.0;
    if (m == arc->to) return 1.0;
    const Point rel = m - arc->center;
    double phi = std::atan2(dot(rel, arc->normal), dot(rel, arc->axis));
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi <= arc->sweep) return phi / arc->sweep;
    // Past the end of the arc: the nearer endpoint.
    const double past_end = phi - arc->sweep;
    const double before_start = 2.0 * std::numbers::pi - phi;
    return past_end < before_start ? 1.0 : 0.0;
  }
  return 0.0;
}

// Every parameter at which the curve passes within tol of an obstacle,
// sorted by parameter.
std::vector<Hit> find_hits(const Curve& curve, const Space& space,
                           const std::vector<Obstacle>& obstacles, double tol) {
  std::vector<Hit> hits;
  const auto& pieces = curve.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
      const Point& m = obstacles[k].point;
      if (std::holds_alternative<ConstantPiece>(p.shape)) {
        if (distance(space, p.start(), m) <= tol) {
          hits.push_back({p.t0, k});
          hits.push_back({p.t1, k});
        }
        continue;
      }
      const double s = nearest_local(p.shape, m);
      const double t = piece_time(p, s);
      if (distance(space, curve.evaluate(t), m) <= tol) hits.push_back({t, k});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.t < b.t || (a.t == b.t && a.obstacle < b.obstacle);
  });
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [](const Hit& a, const Hit& b) {
                           return a.t == b.t && a.obstacle == b.obstacle;
                         }),
             hits.end());
  return hits;
}

HitSchedule schedule_hits(const Curve& curve, const Space& space,
                          const std::vector<Obstacle>& obstacles, double tol) {
  const std::vector<Hit> hits = find_hits(curve, space, obstacles, tol);
  HitSchedule schedule;
  if (hits.empty()) return schedule;

  std::vector<bool> seen(obstacles.size(), false);
  for (const Hit& h : hits) {
    if (!seen[h.obstacle]) {
      seen[h.obstacle] = true;
      schedule.hit_set.push_back(obstacles[h.obstacle]);
    }
  }
  const double t_star = hits.back().t;
  schedule.t_star = t_star;

  std::vector<bool> used(obstacles.size(), false);
  double previous_last = curve.t_lo();
  while (true) {
    // t_k: first hit at or after t'_{k-1} of an obstacle not yet scheduled.
    auto next = std::find_if(hits.begin(), hits.end(), [&](const Hit& h) {
      return h.t >= previous_last && !used[h.obstacle];
    });
    if (next == hits.end()) break;
    const std::size_t k = next->obstacle;
    // t'_k: last hit of the same obstacle in [t_k, t*].
    double last = next->t;
    for (const Hit& h : hits) {
      if (h.obstacle == k && h.t >= next->t) last = std::max(last, h.t);
    }
    schedule.records.push_back(HitRecord{obstacles[k], next->t, last});
    used[k] = true;
    previous_last = last;
    if (last == t_star) break;
  }
  return schedule;
}

CrossingTolerance crossing_tolerance(const Options& opt) {
  return CrossingTolerance{opt.tol_root, 200};
}

struct Window {
  double entry;
  double exit;
};

// Entry crossing in [lo, first_hit] and exit crossing in [last_hit, hi] of
// the sphere of radius delta around m.
Window detour_window(const Curve& curve, const Space& space, const Options& opt, const Point& m,
                     double delta, double lo, double first_hit, double last_hit, double hi) {
  const CrossingTolerance tol = crossing_tolerance(opt);
  const bool tight = opt.splice_extent == SpliceExtent::kTightest;
  Window w;
  w.entry = tight ? last_crossing(curve, space, m, delta, {lo, first_hit}, tol)
                  : first_crossing(curve, space, m, delta, {lo, first_hit}, tol);
  w.exit = tight ? first_crossing(curve, space, m, delta, {last_hit, hi}, tol)
                 : last_crossing(curve, space, m, delta, {last_hit, hi}, tol);
  if (!(lo < w.entry && w.entry < first_hit && first_hit <= last_hit && last_hit < w.exit &&
        w.exit < hi)) {
    throw Error(ErrorCode::kScheduleOverlap,
                "detour window around " + format_point(m) + " is not strictly ordered");
  }
  return w;
}

SpliceRecord make_record(const Curve& curve, const Space& space, const Options& opt,
                         const Point& m, double delta, const Window& w) {
  Point entry = curve.evaluate(w.entry);
  Point exit = curve.evaluate(w.exit);
  Curve arc = boundary_path(space, m, delta, entry, exit, opt.tol_boundary);
  return SpliceRecord{m, delta, w.entry, w.exit, std::move(entry), std::move(exit),
                      std::move(arc)};
}

// Single-obstacle repair on an arbitrary curve: J = {t : γ(t) = m},
// t̃ = inf J, t* = sup J, and the sphere crossings around them.
std::optional<SpliceRecord> detour_single(const Curve& curve, const Space& space,
                                          const Options& opt, const Obstacle& obstacle,
                                          double delta) {
  const std::vector<Hit> hits = find_hits(curve, space, {obstacle}, opt.tol_hit);
  if (hits.empty()) return std::nullopt;
  const double t_first = hits.front().t;
  const double t_last = hits.back().t;
  const Window w = detour_window(curve, space, opt, obstacle.point, delta, curve.t_lo(), t_first,
                                 t_last, curve.t_hi());
  return make_record(curve, space, opt, obstacle.point, delta, w);
}

Curve apply_record(const Space& space, const Curve& curve, const SpliceRecord& rec) {
  const Replacement r{rec.t_entry, rec.t_exit, rec.arc};
  return splice(space, curve, std::span<const Replacement>(&r, 1));
}

void require_disjoint_balls(const Space& space, const DetourRadii& radii) {
  const auto& e = radii.entries;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (!(distance(space, e[i].obstacle, e[j].obstacle) > e[i].delta + e[j].delta)) {
        throw Error(ErrorCode::kScheduleOverlap, "working balls around " +
                                                     format_point(e[i].obstacle) + " and " +
                                                     format_point(e[j].obstacle) + " intersect");
      }
    }
  }
}

PunctureResult puncture_scheduled(const RepairProblem& problem) {
  const Space& space = problem.space;
  const Options& opt = problem.options;
  const Curve& path = problem.path;

  PunctureResult result{path, hit_schedule(problem), {}, {}, {}};
  if (result.schedule.empty()) return result;

  std::vector<Obstacle> active;
  for (const HitRecord& r : result.schedule.records) active.push_back(r.obstacle);
  result.radii = compute_radii(problem, active);
  require_disjoint_balls(space, result.radii);

  const auto& records = result.schedule.records;
  std::vector<Replacement> replacements;
  double previous_exit = path.t_lo();
  for (std::size_t k = 0; k < records.size(); ++k) {
    const double next_hit = (k + 1 < records.size()) ? records[k + 1].t_first : path.t_hi();
    const double delta = result.radii.entries[k].delta;
    const Point& m = records[k].obstacle.point;
    const Window w = detour_window(path, space, opt, m, delta, previous_exit,
                                   records[k].t_first, records[k].t_last, next_hit);
    SpliceRecord rec = make_record(path, space, opt, m, delta, w);
    replacements.push_back(Replacement{rec.t_entry, rec.t_exit, rec.arc});
    result.records.push_back(std::move(rec));
    previous_exit = w.exit;
  }
  result.curve = splice(space, path, replacements);
  return result;
}

PunctureResult puncture_iterative(const RepairProblem& problem) {
  const Space& space = problem.space;
  PunctureResult result{problem.path, hit_schedule(problem), {}, {}, {}};
  // V_0 = U, V_i = V_{i-1} \ {x_i}: one obstacle at a time on the running
  // output. Isolation radii keep every arc away from the other obstacles.
  for (const Obstacle& o : relevant_obstacles(problem, problem.path)) {
    const DetourRadii single = compute_radii(problem, std::span<const Obstacle>(&o, 1));
    const RadiusEntry& entry = single.entries.front();
    std::optional<SpliceRecord> rec =
        detour_single(result.curve, space, problem.options, o, entry.delta);
    if (!rec) continue;
    result.curve = apply_record(space, result.curve, *rec);
    result.radii.entries.push_back(entry);
    result.records.push_back(std::move(*rec));
  }
  require_disjoint_balls(space, result.radii);
  return result;
}

}  // namespace

double prop_delta0(const Space& space, const Domain& domain, const Point& x0, const Point& z) {
  space.require_compatible(x0);
  space.require_compatible(z);
  if (x0 == z) throw Error(ErrorCode::kDegenerateInput, "z coincides with x0");
  const double eps = interior_radius(domain, x0);
  return 0.5 * std::min(eps, distance(space, z, x0));
}

DetourRadii compute_radii(const RepairProblem& problem, std::span<const Obstacle> active) {
  const Space& space = problem.space;
  const Point& x = problem.start();
  const Point& y = problem.end();
  const double fraction = problem.options.delta_fraction;
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta_fraction must lie in (0, 1)");
  }
  DetourRadii radii;
  for (std::size_t k = 0; k < active.size(); ++k) {
    const Point& m = active[k].point;
    RadiusEntry e;
    e.obstacle = m;
    e.epsilon = interior_radius(problem.domain, m);
    e.isolation = active[k].isolation;
    const double dx = distance(space, m, x);
    const double dy = distance(space, m, y);
    if (!(dx > 0.0) || !(dy > 0.0)) {
      throw Error(ErrorCode::kEndpointOnObstacle,
                  "path endpoint coincides with obstacle " + format_point(m));
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (i != k) e.separation = std::min(e.separation, distance(space, m, active[i].point));
    }
    // Infinite terms drop out of the minimum.
    e.formula = 0.5 * std::min({e.epsilon, e.isolation, dx, dy, e.separation});
    e.delta = fraction * e.formula;
    radii.entries.push_back(std::move(e));
  }
  return radii;
}

HitSchedule hit_schedule(const RepairProblem& problem) {
  return schedule_hits(problem.path, problem.space, relevant_obstacles(problem, problem.path),
                       problem.options.tol_hit);
}

Curve puncture_one(const RepairProblem& problem) {
  require_well_posed(problem);
  if (!problem.obstacles.is_finite() || problem.obstacles.points().size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "puncture_one needs exactly one obstacle");
  }
  const std::vector<Obstacle> obstacles = problem.obstacles.all(problem.space);
  const DetourRadii radii = compute_radii(problem, obstacles);
  const std::optional<SpliceRecord> rec = detour_single(
      problem.path, problem.space, problem.options, obstacles.front(), radii.entries[0].delta);
  if (!rec) return problem.path;
  return apply_record(problem.space, problem.path, *rec);
}

PunctureResult puncture(const RepairProblem& problem) {
  require_well_posed(problem);
  PunctureResult result = problem.options.mode == PunctureMode::kIterative
                              ? puncture_iterative(problem)
                              : puncture_scheduled(problem);
  result.report = validate(result.curve, problem, problem.options.samples);
  return result;
}

Curve splice_via_oracle(const RepairProblem& problem, const DetourOracle& oracle,
                        const Point& from, const Point& to) {
  const Space& space = problem.space;
  const Options& opt = problem.options;
  if (from == to) throw Error(ErrorCode::kDegenerateInput, "oracle endpoints coincide");
  const Curve route = oracle(from, to);
  if (!(route.front() == from) || !(route.back() == to)) {
    throw Error(ErrorCode::kOracleContractViolation,
                "oracle curve does not run from " + format_point(from) + " to " +
                    format_point(to));
  }

  const std::vector<Obstacle> nearby = relevant_obstacles(problem, route);
  for (const Hit& h : find_hits(route, space, nearby, opt.tol_hit)) {
    if (h.t > route.t_lo() && h.t < route.t_hi()) {
      throw Error(ErrorCode::kOracleContractViolation,
                  "oracle curve meets obstacle " + format_point(nearby[h.obstacle].point) +
                      " in its interior");
    }
  }
  const int n = std::max(opt.samples, 2);
  for (int i = 0; i < n; ++i) {
    const double t = route.t_lo() + (route.t_hi() - route.t_lo()) * i / (n - 1);
    if (!contains(problem.domain, route.evaluate(std::min(t, route.t_hi())))) {
      throw Error(ErrorCode::kOracleContractViolation, "oracle curve leaves U");
    }
  }

  std::vector<Obstacle> ends;
  for (const Point& p : {from, to}) {
    auto it = std::find_if(nearby.begin(), nearby.end(),
                           [&p](const Obstacle& o) { return o.point == p; });
    if (it == nearby.end()) {
      throw Error(ErrorCode::kInvalidArgument, format_point(p) + " is not an obstacle");
    }
    ends.push_back(*it);
  }
  const DetourRadii radii = compute_radii(problem, ends);
  const CrossingTolerance tol = crossing_tolerance(opt);
  const double reach = first_crossing(route, space, to, radii.entries[1].delta,
                                      {route.t_lo(), route.t_hi()}, tol);
  const double start = last_crossing(route, space, from, radii.entries[0].delta,
                                     {route.t_lo(), reach}, tol);
  const double end = first_crossing(route, space, to, radii.entries[1].delta,
                                    {start, route.t_hi()}, tol);
  return route.restrict(start, end);
}

}  // namespace detour
