#include "detour/verify.hpp"

#include <algorithm>
#include <cmath>

#include "detour/error.hpp"

namespace detour {

namespace {

constexpr double kZeroResidual = 1e-12;

std::vector<double> uniform_grid(const Curve& curve, int samples) {
  const int n = std::max(samples, 2);
  std::vector<double> ts(n);
  const double lo = curve.t_lo();
  const double hi = curve.t_hi();
  for (int i = 0; i < n; ++i) {
    ts[i] = (i + 1 == n) ? hi : lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
  }
  return ts;
}

// Sign changes of a residual sequence; a run of zeros counts once.
int count_crossings(const std::vector<double>& residuals) {
  int count = 0;
  int previous = 0;
  bool in_zero = false;
  for (double f : residuals) {
    const int sign = std::abs(f) <= kZeroResidual ? 0 : (f > 0.0 ? 1 : -1);
    if (sign == 0) {
      if (!in_zero) ++count;
      in_zero = true;
      continue;
    }
    if (in_zero) {
      in_zero = false;
    } else if (previous != 0 && sign != previous) {
      ++count;
    }
    previous = sign;
  }
  return count;
}

double segment_distance(const Point& a, const Point& b, const Point& m) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  const double s = len2 > 0.0 ? std::clamp(dot(m - a, d) / len2, 0.0, 1.0) : 0.0;
  return euclidean_norm(lerp(a, b, s) - m);
}

// ½·min{ε, δ̃, d(m, x), d(m, y)}, or 0 when m is not interior.
double probe_radius(const RepairProblem& problem, const Obstacle& o) {
  double eps = 0.0;
  try {
    eps = interior_radius(problem.domain, o.point);
  } catch (const Error&) {
    return 0.0;
  }
  const double dx = distance(problem.space, o.point, problem.start());
  const double dy = distance(problem.space, o.point, problem.end());
  return 0.5 * std::min({eps, o.isolation, dx, dy});
}

}  // namespace

RepairReport validate(const Curve& curve, const RepairProblem& problem, int samples) {
  const Space& space = problem.space;
  RepairReport report;
  report.samples = std::max(samples, 2);

  std::vector<double> ts = uniform_grid(curve, report.samples);
  for (const Piece& p : curve.pieces()) ts.push_back(p.t0);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<Point> points;
  points.reserve(ts.size());
  for (double t : ts) points.push_back(curve.evaluate(t));

  report.endpoints_ok = curve.front() == problem.start() && curve.back() == problem.end() &&
                        points.front() == problem.start() && points.back() == problem.end();
  if (!report.endpoints_ok) {
    report.violations.push_back("endpoints: curve runs from " + format_point(points.front()) +
                                " to " + format_point(points.back()));
  }

  report.continuity_modulus = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    report.continuity_modulus =
        std::max(report.continuity_modulus, distance(space, points[i - 1], points[i]));
  }

  report.containment_ok = true;
  for (const Point& p : points) {
    if (!contains(problem.domain, p)) {
      report.containment_ok = false;
      report.violations.push_back("containment: " + format_point(p) + " lies outside U");
      break;
    }
  }

  const std::vector<Obstacle> obstacles = relevant_obstacles(problem, curve);
  const bool exact_segments = space.kind() != SpaceKind::kChebyshev;
  std::vector<double> residuals(points.size());
  for (const Obstacle& o : obstacles) {
    double clearance = kInfinity;
    for (const Point& p : points) clearance = std::min(clearance, distance(space, p, o.point));
    if (exact_segments) {
      for (const Piece& piece : curve.pieces()) {
        if (const auto* seg = std::get_if<LinearPiece>(&piece.shape)) {
          clearance = std::min(clearance, segment_distance(seg->from, seg->to, o.point));
        }
      }
    }
    if (clearance < report.min_clearance) report.min_clearance = clearance;
    if (clearance <= problem.options.tol_hit) {
      report.violations.push_back("clearance: curve meets obstacle " + format_point(o.point));
    }

    const double rho = probe_radius(problem, o);
    if (rho > 0.0) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        residuals[i] = distance(space, points[i], o.point) - rho;
      }
      report.crossing_counts.push_back(CrossingCount{o.point, rho, count_crossings(residuals)});
    }
  }
  return report;
}

int brute_force_crossings(const Curve& curve, const Space& space, const Point& center,
                          double radius, int samples) {
  const std::vector<double> ts = uniform_grid(curve, samples);
  std::vector<double> residuals;
  residuals.reserve(ts.size());
  for (double t : ts) residuals.push_back(distance(space, curve.evaluate(t), center) - radius);
  return count_crossings(residuals);
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::kBoundaryNotPathConnected: return "BoundaryNotPathConnected";
    case Violation::kObstacleNotInterior: return "ObstacleNotInterior";
    case Violation::kEndpointOnObstacle: return "EndpointOnObstacle";
    case Violation::kDuplicateObstacle: return "DuplicateObstacle";
    case Violation::kPathEscapesDomain: return "PathEscapesDomain";
    case Violation::kEndpointsCoincide: return "EndpointsCoincide";
  }
  return "Unknown";
}

std::vector<Violation> check_hypotheses(const RepairProblem& problem) {
  std::vector<Violation> out;
  const auto flag = [&out](Violation v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  if (!problem.space.has_connected_spheres()) flag(Violation::kBoundaryNotPathConnected);
  if (problem.start() == problem.end()) flag(Violation::kEndpointsCoincide);

  const std::vector<Obstacle> obstacles = relevant_obstacles(problem, problem.path);
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const Point& m = obstacles[i].point;
    try {
      interior_radius(problem.domain, m);
    } catch (const Error&) {
      flag(Violation::kObstacleNotInterior);
    }
    if (m == problem.start() || m == problem.end()) flag(Violation::kEndpointOnObstacle);
    for (std::size_t j = 0; j < i; ++j) {
      if (obstacles[j].point == m) flag(Violation::kDuplicateObstacle);
    }
  }

  const Curve& path = problem.path;
  for (double t : uniform_grid(path, std::max(problem.options.samples, 2))) {
    if (!contains(problem.domain, path.evaluate(t))) {
      flag(Violation::kPathEscapesDomain);
      break;
    }
  }
  return out;
}

}  // namespace detour
