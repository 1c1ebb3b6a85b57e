#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "detour/problem.hpp"
#include "detour/repair.hpp"

namespace detour::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "v1";

/// Problem files hold the path as waypoints; `waypoints` keeps them so the
/// file can be written back unchanged.
struct ProblemFile {
  RepairProblem problem;
  std::vector<Point> waypoints;
};

/// Splice parameters without the inserted arc, which lives in the curve.
struct SpliceEntry {
  Point obstacle;
  double delta = 0.0;
  double t_entry = 0.0;
  double t_exit = 0.0;
  Point entry;
  Point exit;
};

struct ResultFile {
  Curve curve;
  RepairReport report;
  DetourRadii radii;
  HitSchedule schedule;
  std::vector<SpliceEntry> splices;
  // Settings the curve was produced with (CLI flags may override the
  // problem file).
  double delta_fraction = 0.5;
  SpliceExtent splice_extent = SpliceExtent::kTightest;
  PunctureMode mode = PunctureMode::kScheduled;
};

ResultFile make_result(const PunctureResult& result, const Options& options);

std::string to_string(SpliceExtent extent);
std::string to_string(PunctureMode mode);
SpliceExtent parse_splice_extent(const std::string& text);
PunctureMode parse_puncture_mode(const std::string& text);

Json problem_to_json(const ProblemFile& file);
/// Throws Error(kParseError) naming the offending field.
ProblemFile problem_from_json(const Json& json);

Json curve_to_json(const Curve& curve);
Curve curve_from_json(const Json& json, const Space& space);

Json report_to_json(const RepairReport& report);
RepairReport report_from_json(const Json& json);

Json result_to_json(const ResultFile& result);
ResultFile result_from_json(const Json& json, const Space& space);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& json);

}  // namespace detour::io
