#include "detour/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>

#include "detour/error.hpp"
#include "detour/io.hpp"
#include "detour/repair.hpp"
#include "detour/svg.hpp"
#include "detour/verify.hpp"

namespace detour::cli {

namespace {

std::string describe(Violation v, const RepairProblem& problem) {
  switch (v) {
    case Violation::kBoundaryNotPathConnected:
      return "BoundaryNotPathConnected: spheres in " +
             std::string(to_string(problem.space.kind())) + "(" +
             std::to_string(problem.space.dim()) +
             ") are two-point sets {x - r, x + r}; ball boundaries are not path-connected";
    case Violation::kObstacleNotInterior:
      return "ObstacleNotInterior: an obstacle is not an interior point of U";
    case Violation::kEndpointOnObstacle:
      return "EndpointOnObstacle: a path endpoint is an obstacle";
    case Violation::kDuplicateObstacle:
      return "DuplicateObstacle: an obstacle is listed more than once";
    case Violation::kPathEscapesDomain:
      return "PathEscapesDomain: the input path leaves U";
    case Violation::kEndpointsCoincide:
      return "EndpointsCoincide: the path starts and ends at the same point";
  }
  return to_string(v);
}

bool is_hypothesis_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kHypothesisViolated:
    case ErrorCode::kNotInterior:
    case ErrorCode::kEndpointOnObstacle:
    case ErrorCode::kDuplicateObstacle:
    case ErrorCode::kPathOutsideDomain:
    case ErrorCode::kDegenerateInput:
      return true;
    default:
      return false;
  }
}

bool close(double a, double b, double rel) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Reports fields that differ between the stored and the recomputed report.
std::vector<std::string> report_mismatches(const RepairReport& stored,
                                           const RepairReport& fresh) {
  std::vector<std::string> out;
  if (stored.endpoints_ok != fresh.endpoints_ok) out.push_back("endpoints_ok");
  if (stored.containment_ok != fresh.containment_ok) out.push_back("containment_ok");
  if (!close(stored.continuity_modulus, fresh.continuity_modulus, 1e-9)) {
    out.push_back("continuity_modulus");
  }
  if (!close(stored.min_clearance, fresh.min_clearance, 1e-9)) out.push_back("min_clearance");
  if (stored.violations.size() != fresh.violations.size()) out.push_back("violations");
  bool counts_ok = stored.crossing_counts.size() == fresh.crossing_counts.size();
  for (std::size_t i = 0; counts_ok && i < stored.crossing_counts.size(); ++i) {
    counts_ok = stored.crossing_counts[i].obstacle == fresh.crossing_counts[i].obstacle &&
                stored.crossing_counts[i].count == fresh.crossing_counts[i].count;
  }
  if (!counts_ok) out.push_back("crossing_counts");
  return out;
}

// Rechecks the radii table against the problem: every stored bound is
// recomputed, δ must sit strictly inside (0, formula) and the balls must be
// pairwise disjoint.
std::vector<std::string> radii_problems(const RepairProblem& problem, const io::ResultFile& r) {
  std::vector<std::string> out;
  const Space& space = problem.space;
  const std::vector<Obstacle> known = relevant_obstacles(problem, problem.path);
  std::vector<Obstacle> active;
  for (const RadiusEntry& e : r.radii.entries) {
    auto it = std::find_if(known.begin(), known.end(),
                           [&e](const Obstacle& o) { return o.point == e.obstacle; });
    if (it == known.end()) {
      out.push_back("radii: " + format_point(e.obstacle) + " is not an obstacle");
      return out;
    }
    active.push_back(*it);
  }
  RepairProblem scaled = problem;
  scaled.options.delta_fraction = r.delta_fraction;
  DetourRadii fresh;
  try {
    if (r.mode == PunctureMode::kIterative) {
      for (const Obstacle& o : active) {
        fresh.entries.push_back(
            compute_radii(scaled, std::span<const Obstacle>(&o, 1)).entries.front());
      }
    } else {
      fresh = compute_radii(scaled, active);
    }
  } catch (const Error& e) {
    out.push_back(std::string("radii: ") + e.what());
    return out;
  }
  for (std::size_t i = 0; i < active.size(); ++i) {
    const RadiusEntry& s = r.radii.entries[i];
    const RadiusEntry& f = fresh.entries[i];
    const std::string who = format_point(s.obstacle);
    if (!close(s.epsilon, f.epsilon, 1e-12) || !close(s.isolation, f.isolation, 1e-12) ||
        !close(s.separation, f.separation, 1e-12) || !close(s.formula, f.formula, 1e-12)) {
      out.push_back("radii: bounds for " + who + " do not match the problem");
    }
    if (!(s.delta > 0.0 && s.delta < f.formula)) {
      out.push_back("radii: working radius for " + who + " violates 0 < delta < formula");
    }
  }
  for (std::size_t i = 0; i < active.size(); ++i) {
    for (std::size_t j = i + 1; j < active.size(); ++j) {
      const auto& a = r.radii.entries[i];
      const auto& b = r.radii.entries[j];
      if (!(distance(space, a.obstacle, b.obstacle) > a.delta + b.delta)) {
        out.push_back("radii: working balls around " + format_point(a.obstacle) + " and " +
                      format_point(b.obstacle) + " intersect");
      }
    }
  }
  return out;
}

std::vector<std::string> splice_problems(const RepairProblem& problem, const io::ResultFile& r) {
  std::vector<std::string> out;
  for (const io::SpliceEntry& s : r.splices) {
    for (const Point* p : {&s.entry, &s.exit}) {
      if (std::abs(distance(problem.space, *p, s.obstacle) - s.delta) >
          problem.options.tol_boundary) {
        out.push_back("splices: " + format_point(*p) + " is off the working sphere");
      }
    }
  }
  if (r.mode == PunctureMode::kScheduled) {
    const auto& recs = r.schedule.records;
    if (recs.size() != r.splices.size()) {
      out.push_back("splices: schedule and splice counts differ");
      return out;
    }
    double previous_exit = problem.path.t_lo();
    for (std::size_t k = 0; k < recs.size(); ++k) {
      const double next = k + 1 < recs.size() ? recs[k + 1].t_first : problem.path.t_hi();
      const io::SpliceEntry& s = r.splices[k];
      if (!(previous_exit < s.t_entry && s.t_entry < recs[k].t_first &&
            recs[k].t_first <= recs[k].t_last && recs[k].t_last < s.t_exit && s.t_exit < next)) {
        out.push_back("splices: parameter chain not strictly ordered at record " +
                      std::to_string(k));
      }
      previous_exit = s.t_exit;
    }
  }
  return out;
}

}  // namespace

int cmd_repair(const std::filesystem::path& input, const std::filesystem::path& output,
               const RepairFlags& flags, std::ostream& err) {
  std::optional<io::ProblemFile> file;
  try {
    file.emplace(io::problem_from_json(io::read_json(input)));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  RepairProblem& problem = file->problem;
  if (flags.samples) {
    if (*flags.samples < 2) {
      err << "error: --samples must be at least 2\n";
      return kExitInput;
    }
    problem.options.samples = *flags.samples;
  }
  if (flags.delta_fraction) {
    if (!(*flags.delta_fraction > 0.0 && *flags.delta_fraction < 1.0)) {
      err << "error: --delta-fraction must lie in (0, 1)\n";
      return kExitInput;
    }
    problem.options.delta_fraction = *flags.delta_fraction;
  }
  if (flags.splice_extent) problem.options.splice_extent = *flags.splice_extent;
  if (flags.mode) problem.options.mode = *flags.mode;

  const std::vector<Violation> violations = check_hypotheses(problem);
  if (!violations.empty()) {
    for (Violation v : violations) err << "hypothesis violated: " << describe(v, problem) << '\n';
    return kExitHypothesis;
  }

  std::optional<PunctureResult> repaired;
  try {
    repaired = puncture(problem);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_hypothesis_error(e.code()) ? kExitHypothesis : kExitValidation;
  }

  const PunctureResult& result = *repaired;
  try {
    io::write_json(output, io::result_to_json(io::make_result(result, problem.options)));
    if (flags.svg) {
      if (problem.space.dim() == 2) {
        std::ofstream svg(*flags.svg);
        if (!svg) throw Error(ErrorCode::kParseError, flags.svg->string() + ": cannot write");
        svg << render_svg(problem, result.curve, result.radii);
      } else {
        err << "warning: plots need a two-dimensional space; --svg ignored\n";
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  if (!result.report.passed() || !(result.report.min_clearance > 0.0)) {
    for (const std::string& v : result.report.violations) err << "validation: " << v << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_check(const std::filesystem::path& input, const std::filesystem::path& result_path,
              std::ostream& err) {
  std::optional<io::ProblemFile> file;
  std::optional<io::ResultFile> stored;
  try {
    file.emplace(io::problem_from_json(io::read_json(input)));
    stored.emplace(io::result_from_json(io::read_json(result_path), file->problem.space));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const RepairProblem& problem = file->problem;
  const io::ResultFile& result = *stored;
  const std::vector<Violation> violations = check_hypotheses(problem);
  if (!violations.empty()) {
    for (Violation v : violations) err << "hypothesis violated: " << describe(v, problem) << '\n';
    return kExitHypothesis;
  }

  std::vector<std::string> failures;
  const RepairReport fresh = validate(result.curve, problem, std::max(result.report.samples, 2));
  for (const std::string& field : report_mismatches(result.report, fresh)) {
    failures.push_back("report: stored " + field + " does not match the recomputed value");
  }
  for (const std::string& v : fresh.violations) failures.push_back("validation: " + v);
  if (!(fresh.min_clearance > 0.0)) failures.push_back("validation: zero clearance");
  for (std::string& s : radii_problems(problem, result)) failures.push_back(std::move(s));
  for (std::string& s : splice_problems(problem, result)) failures.push_back(std::move(s));

  for (const std::string& f : failures) err << f << '\n';
  return failures.empty() ? kExitOk : kExitValidation;
}

namespace {

io::ProblemFile demo_problem(const std::string& name) {
  const Space plane = Space::euclidean(2);
  const auto make = [](Space space, Domain domain, std::vector<Point> waypoints,
                       ObstacleSet obstacles) {
    Curve path = Curve::polyline(space, waypoints);
    return io::ProblemFile{
        RepairProblem{space, std::move(domain), std::move(path), std::move(obstacles), Options{}},
        std::move(waypoints)};
  };
  if (name == "single") {
    return make(plane, Domain::ball(plane, {0, 0}, 10), {{-2, 0}, {2, 0}},
                ObstacleSet::finite({{0, 0}}));
  }
  if (name == "multi") {
    return make(plane, Domain::ball(plane, {0, 0}, 10), {{-3, 0}, {3, 0}},
                ObstacleSet::finite({{-1, 0}, {1, 0}}));
  }
  if (name == "lattice") {
    return make(plane, Domain::all(plane), {{-2.5, 0}, {2.5, 0}},
                ObstacleSet::lattice(plane, 1.0, {0, 0}));
  }
  if (name == "corollary") {
    // In and out branches meet only at the obstacle.
    return make(plane, Domain::ball(plane, {0, 0}, 10), {{-2, -1.5}, {0, 0}, {2, -1.5}},
                ObstacleSet::finite({{0, 0}}));
  }
  if (name == "line-negative") {
    const Space line = Space::line();
    return make(line, Domain::ball(line, {0}, 10), {{-2}, {2}}, ObstacleSet::finite({{0}}));
  }
  if (name == "chebyshev") {
    const Space cheb = Space::chebyshev();
    return make(cheb, Domain::ball(cheb, {0, 0}, 10), {{-3, -1}, {0, 0}, {3, 1}},
                ObstacleSet::finite({{-1.5, -0.5}, {0, 0}}));
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown demo \"" + name +
                  "\"; expected single|multi|lattice|corollary|line-negative|chebyshev");
}

}  // namespace

int cmd_demo(const std::string& name, const std::filesystem::path& dir, std::ostream& err) {
  std::optional<io::ProblemFile> file;
  try {
    file.emplace(demo_problem(name));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create " << dir.string() << ": " << ec.message() << '\n';
    return kExitInput;
  }
  const std::filesystem::path problem_path = dir / (name + ".problem.json");
  try {
    io::write_json(problem_path, io::problem_to_json(*file));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  RepairFlags flags;
  if (file->problem.space.dim() == 2) flags.svg = dir / (name + ".svg");
  return cmd_repair(problem_path, dir / (name + ".result.json"), flags, err);
}

}  // namespace detour::cli
