#include "detour/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "detour/error.hpp"

namespace detour::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kParseError, field + ": " + what);
}

const Json& member(const Json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object()) fail(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(field + "." + key, "missing");
  return *it;
}

// Non-finite reals are written as the strings "inf" / "-inf".
Json real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  fail(field, "expected a number");
}

double real(const Json& obj, const std::string& key, const std::string& field) {
  return real_from_json(member(obj, key, field), field + "." + key);
}

std::string text(const Json& obj, const std::string& key, const std::string& field) {
  const Json& j = member(obj, key, field);
  if (!j.is_string()) fail(field + "." + key, "expected a string");
  return j.get<std::string>();
}

Json point_to_json(const Point& p) {
  Json arr = Json::array();
  for (double c : p.coords()) arr.push_back(real_to_json(c));
  return arr;
}

Point point_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty coordinate array");
  std::vector<double> coords;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double c = real_from_json(j[i], field + "[" + std::to_string(i) + "]");
    if (!std::isfinite(c)) fail(field + "[" + std::to_string(i) + "]", "non-finite coordinate");
    coords.push_back(c);
  }
  return Point(std::move(coords));
}

Point point(const Json& obj, const std::string& key, const std::string& field) {
  return point_from_json(member(obj, key, field), field + "." + key);
}

Json space_to_json(const Space& s) {
  return Json{{"kind", std::string(to_string(s.kind()))}, {"dim", s.dim()}};
}

Space space_from_json(const Json& j) {
  const std::string kind = text(j, "kind", "space");
  if (kind == "euclidean") {
    const Json& dim = member(j, "dim", "space");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) {
      fail("space.dim", "expected an integer >= 1");
    }
    return Space::euclidean(dim.get<std::size_t>());
  }
  const auto check_dim = [&j](long long expected) {
    auto it = j.find("dim");
    if (it != j.end() && (!it->is_number_integer() || it->get<long long>() != expected)) {
      fail("space.dim", "must be " + std::to_string(expected));
    }
  };
  if (kind == "chebyshev") {
    check_dim(2);
    return Space::chebyshev();
  }
  if (kind == "line") {
    check_dim(1);
    return Space::line();
  }
  fail("space.kind", "expected one of euclidean|chebyshev|line, got \"" + kind + "\"");
}

Json domain_to_json(const Domain& d) {
  return std::visit(
      [](const auto& shape) -> Json {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return Json{{"shape", "all"}};
        } else if constexpr (std::is_same_v<T, BallShape>) {
          return Json{{"shape", "ball"},
                      {"center", point_to_json(shape.center)},
                      {"radius", shape.radius},
                      {"open", shape.open}};
        } else {
          return Json{{"shape", "box"}, {"min", point_to_json(shape.min)},
                      {"max", point_to_json(shape.max)}};
        }
      },
      d.shape());
}

Domain domain_from_json(const Json& j, const Space& space) {
  const std::string shape = text(j, "shape", "domain");
  try {
    if (shape == "all") return Domain::all(space);
    if (shape == "ball") {
      bool open = false;
      if (auto it = j.find("open"); it != j.end()) {
        if (!it->is_boolean()) fail("domain.open", "expected a boolean");
        open = it->get<bool>();
      }
      return Domain::ball(space, point(j, "center", "domain"), real(j, "radius", "domain"), open);
    }
    if (shape == "box") {
      return Domain::box(space, point(j, "min", "domain"), point(j, "max", "domain"));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    fail("domain", e.what());
  }
  fail("domain.shape", "expected one of all|ball|box, got \"" + shape + "\"");
}

std::vector<Point> points_from_json(const Json& j, const std::string& field, const Space& space) {
  if (!j.is_array()) fail(field, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    Point p = point_from_json(j[i], f);
    if (p.dim() != space.dim()) {
      fail(f, "expected " + std::to_string(space.dim()) + " coordinates");
    }
    out.push_back(std::move(p));
  }
  return out;
}

Json obstacles_to_json(const ObstacleSet& set) {
  if (set.is_finite()) {
    Json pts = Json::array();
    for (const Point& p : set.points()) pts.push_back(point_to_json(p));
    return Json{{"mode", "finite"}, {"points", pts}};
  }
  if (!set.lattice_spec()) {
    throw Error(ErrorCode::kInvalidArgument, "only lattice generators can be serialized");
  }
  return Json{{"mode", "lattice"},
              {"step", set.lattice_spec()->step},
              {"origin", point_to_json(set.lattice_spec()->origin)}};
}

ObstacleSet obstacles_from_json(const Json& j, const Space& space) {
  const std::string mode = text(j, "mode", "obstacles");
  if (mode == "finite") {
    return ObstacleSet::finite(points_from_json(member(j, "points", "obstacles"),
                                                "obstacles.points", space));
  }
  if (mode == "lattice") {
    const double step = real(j, "step", "obstacles");
    if (!(step > 0.0) || !std::isfinite(step)) fail("obstacles.step", "must be positive");
    Point origin = point(j, "origin", "obstacles");
    if (origin.dim() != space.dim()) fail("obstacles.origin", "dimension mismatch");
    return ObstacleSet::lattice(space, step, std::move(origin));
  }
  fail("obstacles.mode", "expected finite|lattice, got \"" + mode + "\"");
}

Json options_to_json(const Options& o) {
  return Json{{"delta_fraction", o.delta_fraction},
              {"tol_root", o.tol_root},
              {"tol_boundary", o.tol_boundary},
              {"tol_hit", o.tol_hit},
              {"samples", o.samples},
              {"splice_extent", to_string(o.splice_extent)},
              {"puncture_mode", to_string(o.mode)}};
}

Options options_from_json(const Json& j) {
  Options o;
  if (j.is_null()) return o;
  if (!j.is_object()) fail("options", "expected an object");
  const auto opt_real = [&j](const char* key, double& out) {
    if (auto it = j.find(key); it != j.end()) {
      out = real_from_json(*it, std::string("options.") + key);
    }
  };
  opt_real("delta_fraction", o.delta_fraction);
  opt_real("tol_root", o.tol_root);
  opt_real("tol_boundary", o.tol_boundary);
  opt_real("tol_hit", o.tol_hit);
  if (!(o.delta_fraction > 0.0 && o.delta_fraction < 1.0)) {
    fail("options.delta_fraction", "must lie in (0, 1)");
  }
  if (!(o.tol_root > 0.0)) fail("options.tol_root", "must be positive");
  if (!(o.tol_boundary > 0.0)) fail("options.tol_boundary", "must be positive");
  if (!(o.tol_hit >= 0.0)) fail("options.tol_hit", "must be non-negative");
  if (auto it = j.find("samples"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 2) {
      fail("options.samples", "expected an integer >= 2");
    }
    o.samples = it->get<int>();
  }
  try {
    if (auto it = j.find("splice_extent"); it != j.end()) {
      if (!it->is_string()) fail("options.splice_extent", "expected a string");
      o.splice_extent = parse_splice_extent(it->get<std::string>());
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    fail("options.splice_extent", e.what());
  }
  try {
    if (auto it = j.find("puncture_mode"); it != j.end()) {
      if (!it->is_string()) fail("options.puncture_mode", "expected a string");
      o.mode = parse_puncture_mode(it->get<std::string>());
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    fail("options.puncture_mode", e.what());
  }
  return o;
}

Json radii_to_json(const DetourRadii& radii) {
  Json arr = Json::array();
  for (const RadiusEntry& e : radii.entries) {
    arr.push_back(Json{{"obstacle", point_to_json(e.obstacle)},
                       {"epsilon", real_to_json(e.epsilon)},
                       {"isolation", real_to_json(e.isolation)},
                       {"separation", real_to_json(e.separation)},
                       {"formula", real_to_json(e.formula)},
                       {"delta", real_to_json(e.delta)}});
  }
  return arr;
}

DetourRadii radii_from_json(const Json& j) {
  if (!j.is_array()) fail("radii", "expected an array");
  DetourRadii radii;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = "radii[" + std::to_string(i) + "]";
    RadiusEntry e;
    e.obstacle = point(j[i], "obstacle", f);
    e.epsilon = real(j[i], "epsilon", f);
    e.isolation = real(j[i], "isolation", f);
    e.separation = real(j[i], "separation", f);
    e.formula = real(j[i], "formula", f);
    e.delta = real(j[i], "delta", f);
    radii.entries.push_back(std::move(e));
  }
  return radii;
}

Json schedule_to_json(const HitSchedule& s) {
  Json records = Json::array();
  for (const HitRecord& r : s.records) {
    records.push_back(Json{{"obstacle", point_to_json(r.obstacle.point)},
                           {"isolation", real_to_json(r.obstacle.isolation)},
                           {"t_first", r.t_first},
                           {"t_last", r.t_last}});
  }
  Json hit_set = Json::array();
  for (const Obstacle& o : s.hit_set) hit_set.push_back(point_to_json(o.point));
  return Json{{"t_star", s.t_star ? Json(*s.t_star) : Json(nullptr)},
              {"records", records},
              {"hit_set", hit_set}};
}

HitSchedule schedule_from_json(const Json& j) {
  HitSchedule s;
  const Json& t_star = member(j, "t_star", "schedule");
  if (!t_star.is_null()) s.t_star = real_from_json(t_star, "schedule.t_star");
  const Json& records = member(j, "records", "schedule");
  if (!records.is_array()) fail("schedule.records", "expected an array");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string f = "schedule.records[" + std::to_string(i) + "]";
    HitRecord r;
    r.obstacle.point = point(records[i], "obstacle", f);
    r.obstacle.isolation = real(records[i], "isolation", f);
    r.t_first = real(records[i], "t_first", f);
    r.t_last = real(records[i], "t_last", f);
    s.records.push_back(std::move(r));
  }
  const Json& hit_set = member(j, "hit_set", "schedule");
  if (!hit_set.is_array()) fail("schedule.hit_set", "expected an array");
  for (std::size_t i = 0; i < hit_set.size(); ++i) {
    s.hit_set.push_back(
        Obstacle{point_from_json(hit_set[i], "schedule.hit_set[" + std::to_string(i) + "]"),
                 kInfinity});
  }
  return s;
}

Json splices_to_json(const std::vector<SpliceEntry>& splices) {
  Json arr = Json::array();
  for (const SpliceEntry& e : splices) {
    arr.push_back(Json{{"obstacle", point_to_json(e.obstacle)},
                       {"delta", e.delta},
                       {"t_entry", e.t_entry},
                       {"t_exit", e.t_exit},
                       {"entry", point_to_json(e.entry)},
                       {"exit", point_to_json(e.exit)}});
  }
  return arr;
}

std::vector<SpliceEntry> splices_from_json(const Json& j) {
  if (!j.is_array()) fail("splices", "expected an array");
  std::vector<SpliceEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = "splices[" + std::to_string(i) + "]";
    out.push_back(SpliceEntry{point(j[i], "obstacle", f), real(j[i], "delta", f),
                              real(j[i], "t_entry", f), real(j[i], "t_exit", f),
                              point(j[i], "entry", f), point(j[i], "exit", f)});
  }
  return out;
}

}  // namespace

std::string to_string(SpliceExtent extent) {
  return extent == SpliceExtent::kWidest ? "widest" : "tightest";
}

std::string to_string(PunctureMode mode) {
  return mode == PunctureMode::kIterative ? "iterative" : "scheduled";
}

SpliceExtent parse_splice_extent(const std::string& text) {
  if (text == "tightest") return SpliceExtent::kTightest;
  if (text == "widest") return SpliceExtent::kWidest;
  throw Error(ErrorCode::kInvalidArgument, "expected tightest|widest, got \"" + text + "\"");
}

PunctureMode parse_puncture_mode(const std::string& text) {
  if (text == "scheduled") return PunctureMode::kScheduled;
  if (text == "iterative") return PunctureMode::kIterative;
  throw Error(ErrorCode::kInvalidArgument, "expected scheduled|iterative, got \"" + text + "\"");
}

Json problem_to_json(const ProblemFile& file) {
  const RepairProblem& p = file.problem;
  Json waypoints = Json::array();
  for (const Point& w : file.waypoints) waypoints.push_back(point_to_json(w));
  return Json{{"version", kSchemaVersion},
              {"space", space_to_json(p.space)},
              {"domain", domain_to_json(p.domain)},
              {"path", Json{{"waypoints", waypoints}}},
              {"obstacles", obstacles_to_json(p.obstacles)},
              {"options", options_to_json(p.options)}};
}

ProblemFile problem_from_json(const Json& json) {
  if (!json.is_object()) fail("(root)", "expected an object");
  const std::string version = text(json, "version", "(root)");
  if (version != kSchemaVersion) fail("version", "unsupported schema \"" + version + "\"");
  const Space space = space_from_json(member(json, "space", "(root)"));
  Domain domain = domain_from_json(member(json, "domain", "(root)"), space);
  const Json& path = member(json, "path", "(root)");
  std::vector<Point> waypoints =
      points_from_json(member(path, "waypoints", "path"), "path.waypoints", space);
  if (waypoints.empty()) fail("path.waypoints", "needs at least one waypoint");
  ObstacleSet obstacles = obstacles_from_json(member(json, "obstacles", "(root)"), space);
  auto opt = json.find("options");
  const Options options = options_from_json(opt == json.end() ? Json() : *opt);
  Curve curve = Curve::polyline(space, waypoints);
  return ProblemFile{
      RepairProblem{space, std::move(domain), std::move(curve), std::move(obstacles), options},
      std::move(waypoints)};
}

Json curve_to_json(const Curve& curve) {
  Json pieces = Json::array();
  for (const Piece& p : curve.pieces()) {
    Json j = std::visit(
        [](const auto& s) -> Json {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, LinearPiece>) {
            return Json{{"kind", "linear"}, {"from", point_to_json(s.from)},
                        {"to", point_to_json(s.to)}};
          } else if constexpr (std::is_same_v<T, ArcPiece>) {
            return Json{{"kind", "arc"},
                        {"center", point_to_json(s.center)},
                        {"radius", s.radius},
                        {"from", point_to_json(s.from)},
                        {"to", point_to_json(s.to)},
                        {"orientation",
                         Json{{"normal", point_to_json(s.normal)}, {"sweep", s.sweep}}}};
          } else {
            return Json{{"kind", "constant"}, {"at", point_to_json(s.at)}};
          }
        },
        p.shape);
    j["t"] = Json::array({p.t0, p.t1});
    pieces.push_back(std::move(j));
  }
  return pieces;
}

Curve curve_from_json(const Json& json, const Space& space) {
  if (!json.is_array() || json.empty()) fail("pieces", "expected a non-empty array");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < json.size(); ++i) {
    const std::string f = "pieces[" + std::to_string(i) + "]";
    const Json& j = json[i];
    const Json& t = member(j, "t", f);
    if (!t.is_array() || t.size() != 2) fail(f + ".t", "expected [t0, t1]");
    Piece piece;
    piece.t0 = real_from_json(t[0], f + ".t[0]");
    piece.t1 = real_from_json(t[1], f + ".t[1]");
    const std::string kind = text(j, "kind", f);
    if (kind == "linear") {
      piece.shape = LinearPiece{point(j, "from", f), point(j, "to", f)};
    } else if (kind == "arc") {
      const Json& o = member(j, "orientation", f);
      try {
        piece.shape = make_arc(point(j, "center", f), real(j, "radius", f), point(j, "from", f),
                               point(j, "to", f), point(o, "normal", f + ".orientation"),
                               real(o, "sweep", f + ".orientation"));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kParseError) throw;
        fail(f, e.what());
      }
    } else if (kind == "constant") {
      piece.shape = ConstantPiece{point(j, "at", f)};
    } else {
      fail(f + ".kind", "expected linear|arc|constant, got \"" + kind + "\"");
    }
    for (const Point* p : {&shape_start(piece.shape), &shape_end(piece.shape)}) {
      if (p->dim() != space.dim()) fail(f, "dimension mismatch");
    }
    pieces.push_back(std::move(piece));
  }
  try {
    return Curve(std::move(pieces));
  } catch (const Error& e) {
    fail("pieces", e.what());
  }
}

Json report_to_json(const RepairReport& r) {
  Json counts = Json::array();
  for (const CrossingCount& c : r.crossing_counts) {
    counts.push_back(Json{{"obstacle", point_to_json(c.obstacle)},
                          {"radius", real_to_json(c.radius)},
                          {"count", c.count}});
  }
  return Json{{"samples", r.samples},
              {"endpoints_ok", r.endpoints_ok},
              {"continuity_modulus", real_to_json(r.continuity_modulus)},
              {"min_clearance", real_to_json(r.min_clearance)},
              {"containment_ok", r.containment_ok},
              {"crossing_counts", counts},
              {"violations", r.violations}};
}

RepairReport report_from_json(const Json& j) {
  RepairReport r;
  const auto flag = [&j](const char* key) {
    const Json& v = member(j, key, "report");
    if (!v.is_boolean()) fail(std::string("report.") + key, "expected a boolean");
    return v.get<bool>();
  };
  const Json& samples = member(j, "samples", "report");
  if (!samples.is_number_integer()) fail("report.samples", "expected an integer");
  r.samples = samples.get<int>();
  r.endpoints_ok = flag("endpoints_ok");
  r.continuity_modulus = real(j, "continuity_modulus", "report");
  r.min_clearance = real(j, "min_clearance", "report");
  r.containment_ok = flag("containment_ok");
  const Json& counts = member(j, "crossing_counts", "report");
  if (!counts.is_array()) fail("report.crossing_counts", "expected an array");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::string f = "report.crossing_counts[" + std::to_string(i) + "]";
    const Json& count = member(counts[i], "count", f);
    if (!count.is_number_integer()) fail(f + ".count", "expected an integer");
    r.crossing_counts.push_back(
        CrossingCount{point(counts[i], "obstacle", f), real(counts[i], "radius", f),
                      count.get<int>()});
  }
  const Json& violations = member(j, "violations", "report");
  if (!violations.is_array()) fail("report.violations", "expected an array");
  for (const Json& v : violations) {
    if (!v.is_string()) fail("report.violations", "expected strings");
    r.violations.push_back(v.get<std::string>());
  }
  return r;
}

ResultFile make_result(const PunctureResult& result, const Options& options) {
  ResultFile file{result.curve, result.report, result.radii, result.schedule, {},
                  options.delta_fraction, options.splice_extent, options.mode};
  for (const SpliceRecord& r : result.records) {
    file.splices.push_back(SpliceEntry{r.obstacle, r.delta, r.t_entry, r.t_exit, r.entry, r.exit});
  }
  return file;
}

Json result_to_json(const ResultFile& result) {
  return Json{{"version", kSchemaVersion},
              {"settings", Json{{"delta_fraction", result.delta_fraction},
                                {"splice_extent", to_string(result.splice_extent)},
                                {"puncture_mode", to_string(result.mode)}}},
              {"pieces", curve_to_json(result.curve)},
              {"report", report_to_json(result.report)},
              {"radii", radii_to_json(result.radii)},
              {"schedule", schedule_to_json(result.schedule)},
              {"splices", splices_to_json(result.splices)}};
}

ResultFile result_from_json(const Json& json, const Space& space) {
  if (!json.is_object()) fail("(root)", "expected an object");
  const std::string version = text(json, "version", "(root)");
  if (version != kSchemaVersion) fail("version", "unsupported schema \"" + version + "\"");
  const Json& settings = member(json, "settings", "(root)");
  ResultFile file{curve_from_json(member(json, "pieces", "(root)"), space),
                  report_from_json(member(json, "report", "(root)")),
                  radii_from_json(member(json, "radii", "(root)")),
                  schedule_from_json(member(json, "schedule", "(root)")),
                  splices_from_json(member(json, "splices", "(root)")),
                  real(settings, "delta_fraction", "settings"),
                  SpliceExtent::kTightest,
                  PunctureMode::kScheduled};
  try {
    file.splice_extent = parse_splice_extent(text(settings, "splice_extent", "settings"));
    file.mode = parse_puncture_mode(text(settings, "puncture_mode", "settings"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    fail("settings", e.what());
  }
  return file;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, path.string() + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& json) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParseError, path.string() + ": cannot write");
  out << json.dump(2) << '\n';
}

}  // namespace detour::io
