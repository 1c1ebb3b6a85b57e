#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "detour/error.hpp"
#include "detour/io.hpp"
#include "detour/repair.hpp"
#include "test_seed.hpp"

namespace detour {
namespace {

const Space kPlane = Space::euclidean(2);

io::ProblemFile make_file(std::vector<Point> waypoints, std::vector<Point> obstacles) {
  Curve path = Curve::polyline(kPlane, waypoints);
  return io::ProblemFile{RepairProblem{kPlane, Domain::ball(kPlane, {0, 0}, 10), std::move(path),
                                       ObstacleSet::finite(std::move(obstacles)), Options{}},
                         std::move(waypoints)};
}

std::string parse_error(const io::Json& j) {
  try {
    io::problem_from_json(j);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    return e.what();
  }
  ADD_FAILURE() << "expected a parse error";
  return {};
}

TEST(ProblemJson, RoundTripIsLossless) {
  std::mt19937_64 rng(testing::seed() + 40);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 50; ++i) {
    io::ProblemFile f = make_file({{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}},
                                  {{u(rng), u(rng)}});
    f.problem.options.delta_fraction = 0.1 + 0.8 * std::abs(u(rng)) / 5;
    f.problem.options.mode = i % 2 ? PunctureMode::kIterative : PunctureMode::kScheduled;
    f.problem.options.splice_extent = i % 3 ? SpliceExtent::kTightest : SpliceExtent::kWidest;
    const io::Json j = io::problem_to_json(f);
    const io::ProblemFile back = io::problem_from_json(io::Json::parse(j.dump()));
    EXPECT_EQ(back.waypoints, f.waypoints);
    EXPECT_EQ(back.problem.path, f.problem.path);
    EXPECT_EQ(back.problem.obstacles.points(), f.problem.obstacles.points());
    EXPECT_EQ(back.problem.options.delta_fraction, f.problem.options.delta_fraction);
    EXPECT_EQ(back.problem.options.mode, f.problem.options.mode);
    EXPECT_EQ(back.problem.options.splice_extent, f.problem.options.splice_extent);
    EXPECT_EQ(io::problem_to_json(back).dump(), j.dump());
  }
}

TEST(ProblemJson, OtherShapesAndModes) {
  io::ProblemFile f = make_file({{-2.5, 0.5}, {2.5, 0.5}}, {});
  f.problem.domain = Domain::box(kPlane, {-3, -1}, {3, 1});
  const io::Json box = io::problem_to_json(f);
  EXPECT_EQ(io::problem_to_json(io::problem_from_json(box)).dump(), box.dump());

  f.problem.domain = Domain::all(kPlane);
  f.problem.obstacles = ObstacleSet::lattice(kPlane, 0.5, {0.25, 0});
  const io::Json lattice = io::problem_to_json(f);
  const io::ProblemFile back = io::problem_from_json(lattice);
  EXPECT_FALSE(back.problem.obstacles.is_finite());
  ASSERT_TRUE(back.problem.obstacles.lattice_spec().has_value());
  EXPECT_EQ(back.problem.obstacles.lattice_spec()->step, 0.5);
  EXPECT_EQ(io::problem_to_json(back).dump(), lattice.dump());
}

TEST(ProblemJson, ErrorsNameTheField) {
  const io::Json good = io::problem_to_json(make_file({{-2, 0}, {2, 0}}, {{0, 0}}));
  {
    io::Json j = good;
    j["space"]["kind"] = "hyperbolic";
    EXPECT_NE(parse_error(j).find("space.kind"), std::string::npos);
  }
  {
    io::Json j = good;
    j["path"]["waypoints"][1] = {1, 2, 3};
    EXPECT_NE(parse_error(j).find("path.waypoints"), std::string::npos);
  }
  {
    io::Json j = good;
    j["version"] = "v0";
    EXPECT_NE(parse_error(j).find("version"), std::string::npos);
  }
  {
    io::Json j = good;
    j["options"]["delta_fraction"] = "half";
    EXPECT_NE(parse_error(j).find("options.delta_fraction"), std::string::npos);
  }
  {
    io::Json j = good;
    j.erase("obstacles");
    EXPECT_NE(parse_error(j).find("obstacles"), std::string::npos);
  }
}

TEST(ResultJson, RoundTripReproducesReport) {
  const io::ProblemFile f = make_file({{-3, 0}, {0, 1}, {3, 0}}, {{-1.5, 0.5}, {1.5, 0.5}});
  const PunctureResult r = puncture(f.problem);
  const io::ResultFile stored = io::make_result(r, f.problem.options);
  const io::Json j = io::result_to_json(stored);
  const io::ResultFile back = io::result_from_json(io::Json::parse(j.dump()), kPlane);
  EXPECT_EQ(back.curve, r.curve);
  EXPECT_EQ(io::result_to_json(back).dump(), j.dump());
  const RepairReport again = validate(back.curve, f.problem, back.report.samples);
  EXPECT_EQ(again.min_clearance, back.report.min_clearance);
  EXPECT_EQ(again.continuity_modulus, back.report.continuity_modulus);
  ASSERT_EQ(back.radii.entries.size(), 2u);
  EXPECT_EQ(back.radii.entries[0].delta, r.radii.entries[0].delta);
  EXPECT_EQ(back.splices.size(), 2u);
  EXPECT_EQ(back.schedule.records.size(), 2u);
}

TEST(ResultJson, InfinityWrittenAsString) {
  const io::ProblemFile f = make_file({{-2, 0}, {2, 0}}, {{0, 0}});
  const io::Json j = io::result_to_json(io::make_result(puncture(f.problem), f.problem.options));
  EXPECT_EQ(j["radii"][0]["isolation"], "inf");
  EXPECT_EQ(j["version"], "v1");
}

TEST(Files, WriteThenReadIsByteStable) {
  const auto dir = std::filesystem::temp_directory_path() / "detour_io_test";
  std::filesystem::create_directories(dir);
  const io::Json j = io::problem_to_json(make_file({{-2, 0.1}, {2, 1.0 / 3.0}}, {{0, 0.2}}));
  io::write_json(dir / "a.json", j);
  const io::Json back = io::read_json(dir / "a.json");
  EXPECT_EQ(back.dump(), j.dump());
  EXPECT_THROW(io::read_json(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace detour
