#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "detour/boundary.hpp"
#include "detour/curve.hpp"
#include "detour/error.hpp"
#include "test_seed.hpp"

namespace detour {
namespace {

const Space kPlane = Space::euclidean(2);

Curve segment(const Point& a, const Point& b) {
  const Point pts[] = {a, b};
  return Curve::polyline(kPlane, pts);
}

// Independent reference: sign changes of d(γ(t),c) − r on a dense grid,
// refined by bisection. Zero samples are reported directly.
std::vector<double> sampled_roots(const Curve& c, const Space& s, const Point& center, double r,
                                  int samples) {
  std::vector<double> out;
  const auto f = [&](double t) { return distance(s, c.evaluate(t), center) - r; };
  const double lo = c.t_lo(), hi = c.t_hi();
  double t_prev = lo, f_prev = f(lo);
  if (f_prev == 0) out.push_back(lo);
  for (int i = 1; i <= samples; ++i) {
    const double t = lo + (hi - lo) * i / samples;
    const double ft = f(t);
    if (ft == 0) {
      out.push_back(t);
    } else if (f_prev != 0 && (f_prev < 0) != (ft < 0)) {
      double a = t_prev, b = t;
      double fa = f_prev;
      for (int k = 0; k < 100; ++k) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.push_back(0.5 * (a + b));
    }
    t_prev = t;
    f_prev = ft;
  }
  return out;
}

TEST(Evaluate, SegmentMidpoint) {
  EXPECT_EQ(segment({-2, 0}, {2, 0}).evaluate(0.5), (Point{0, 0}));
}

TEST(Evaluate, ConstantEverywhere) {
  const Curve c = Curve::constant({1, 2});
  EXPECT_EQ(c.evaluate(0.0), (Point{1, 2}));
  EXPECT_EQ(c.evaluate(0.7), (Point{1, 2}));
}

TEST(Evaluate, ArcMidpointOnCircle) {
  const Curve arc = boundary_path(kPlane, {0, 0}, 0.5, {-0.5, 0}, {0.5, 0});
  const Point m = arc.evaluate(0.5);
  EXPECT_NEAR(euclidean_norm(m), 0.5, 1e-15);
  EXPECT_NEAR(m[1], 0.5, 1e-15);
}

TEST(Evaluate, OutOfRangeThrows) {
  const Curve c = segment({0, 0}, {1, 0});
  try {
    c.evaluate(1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(Evaluate, ExactEndpointsAndDeterminism) {
  const Point pts[] = {{0.1, 0.2}, {0.7, -1.3}, {2.9, 0.333}};
  const Curve c = Curve::polyline(kPlane, pts, -1.0, 3.0);
  EXPECT_EQ(c.evaluate(-1.0), pts[0]);
  EXPECT_EQ(c.evaluate(3.0), pts[2]);
  for (double t = -1; t <= 3; t += 0.0137) EXPECT_EQ(c.evaluate(t), c.evaluate(t));
}

TEST(SphereCrossings, SegmentTwoRoots) {
  const CrossingSet cs = sphere_crossings(segment({-2, 0}, {2, 0}), kPlane, {0, 0}, 0.5, {0, 1});
  const auto t = cs.parameters();
  ASSERT_EQ(t.size(), 2u);
  EXPECT_NEAR(t[0], 0.375, 1e-15);
  EXPECT_NEAR(t[1], 0.625, 1e-15);
  const auto ref = sampled_roots(segment({-2, 0}, {2, 0}), kPlane, {0, 0}, 0.5, 1'000'000);
  ASSERT_EQ(ref.size(), 2u);
  EXPECT_NEAR(t[0], ref[0], 1e-9);
  EXPECT_NEAR(t[1], ref[1], 1e-9);
}

TEST(SphereCrossings, SegmentInsideBallIsEmpty) {
  EXPECT_TRUE(sphere_crossings(segment({-2, 0}, {2, 0}), kPlane, {0, 0}, 5, {0, 1}).empty());
}

TEST(SphereCrossings, TangentSingleRoot) {
  const Curve c = segment({-2, 0.5}, {2, 0.5});
  const auto t = sphere_crossings(c, kPlane, {0, 0}, 0.5, {0, 1}).parameters();
  ASSERT_EQ(t.size(), 1u);
  EXPECT_DOUBLE_EQ(t[0], 0.5);
  EXPECT_DOUBLE_EQ(first_crossing(c, kPlane, {0, 0}, 0.5, {0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(last_crossing(c, kPlane, {0, 0}, 0.5, {0, 1}), 0.5);
}

TEST(SphereCrossings, FirstAndLast) {
  const Curve c = segment({-2, 0}, {2, 0});
  EXPECT_DOUBLE_EQ(first_crossing(c, kPlane, {0, 0}, 0.5, {0, 1}), 0.375);
  EXPECT_DOUBLE_EQ(last_crossing(c, kPlane, {0, 0}, 0.5, {0, 1}), 0.625);
}

TEST(SphereCrossings, WindowWithoutRootsThrows) {
  const Curve c = segment({-2, 0}, {2, 0});
  try {
    first_crossing(c, kPlane, {0, 0}, 0.5, {0.4, 0.6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoCrossing);
  }
  EXPECT_THROW(last_crossing(c, kPlane, {0, 0}, 0.5, {0.0, 0.3}), Error);
}

TEST(SphereCrossings, ChebyshevSegmentCasewise) {
  const Space s = Space::chebyshev();
  const Point pts[] = {{-3, -1}, {3, 1}};
  const Curve c = Curve::polyline(s, pts);
  const auto t = sphere_crossings(c, s, {0, 0}, 1.5, {0, 1}).parameters();
  ASSERT_EQ(t.size(), 2u);
  EXPECT_NEAR(t[0], 0.25, 1e-15);
  EXPECT_NEAR(t[1], 0.75, 1e-15);
}

TEST(SphereCrossings, ArcPiecesByBisection) {
  // Unit upper semicircle against a circle centered at (1,0) of radius 1:
  // intersection at (1/2, √3/2), a third of the way along the arc from (1,0).
  const Curve arc = boundary_path(kPlane, {0, 0}, 1, {1, 0}, {-1, 0});
  const auto t = sphere_crossings(arc, kPlane, {1, 0}, 1, {arc.t_lo(), arc.t_hi()}).parameters();
  ASSERT_EQ(t.size(), 1u);
  EXPECT_NEAR(t[0], 1.0 / 3.0, 1e-10);
}

TEST(SphereCrossings, RandomPolylinesMatchSampledOracle) {
  std::mt19937_64 rng(testing::seed() + 10);
  std::uniform_real_distribution<double> u(-3, 3);
  for (const Space& s : {Space::euclidean(2), Space::chebyshev()}) {
    for (int i = 0; i < 40; ++i) {
      std::vector<Point> pts;
      for (int k = 0; k < 4; ++k) pts.push_back({u(rng), u(rng)});
      const Curve c = Curve::polyline(s, pts);
      const Point center{u(rng) * 0.5, u(rng) * 0.5};
      const double r = 0.3 + std::abs(u(rng)) * 0.5;
      const auto got = sphere_crossings(c, s, center, r, {0, 1}).parameters();
      const auto ref = sampled_roots(c, s, center, r, 200'000);
      ASSERT_EQ(got.size(), ref.size());
      for (std::size_t k = 0; k < got.size(); ++k) {
        EXPECT_NEAR(got[k], ref[k], 1e-9);
        EXPECT_LE(std::abs(distance(s, c.evaluate(got[k]), center) - r), 1e-10);
      }
    }
  }
}

TEST(Splice, NoReplacementsIsIdentity) {
  const Curve c = segment({-2, 0}, {2, 0});
  EXPECT_EQ(splice(kPlane, c, {}), c);
}

TEST(Splice, SingleArcGivesThreePieces) {
  const Curve c = segment({-2, 0}, {2, 0});
  const Replacement r{0.375, 0.625, boundary_path(kPlane, {0, 0}, 0.5, {-0.5, 0}, {0.5, 0})};
  const Curve out = splice(kPlane, c, std::span(&r, 1));
  ASSERT_EQ(out.pieces().size(), 3u);
  EXPECT_EQ(out.front(), (Point{-2, 0}));
  EXPECT_EQ(out.back(), (Point{2, 0}));
  EXPECT_EQ(out.t_lo(), 0.0);
  EXPECT_EQ(out.t_hi(), 1.0);
  for (std::size_t k = 1; k < out.pieces().size(); ++k) {
    EXPECT_EQ(out.pieces()[k - 1].end(), out.pieces()[k].start());
    EXPECT_EQ(out.pieces()[k - 1].t1, out.pieces()[k].t0);
  }
  EXPECT_TRUE(std::holds_alternative<ArcPiece>(out.pieces()[1].shape));
}

TEST(Splice, TwoArcsGiveFivePieces) {
  const Curve c = segment({-3, 0}, {3, 0});
  const double a = 1.0 / 3.0 - 0.5 / 6.0, b = 1.0 / 3.0 + 0.5 / 6.0;
  const double d = 2.0 / 3.0 - 0.5 / 6.0, e = 2.0 / 3.0 + 0.5 / 6.0;
  const Replacement rs[] = {
      {a, b, boundary_path(kPlane, {-1, 0}, 0.5, c.evaluate(a), c.evaluate(b), 1e-9)},
      {d, e, boundary_path(kPlane, {1, 0}, 0.5, c.evaluate(d), c.evaluate(e), 1e-9)}};
  const Curve out = splice(kPlane, c, rs);
  ASSERT_EQ(out.pieces().size(), 5u);
  for (std::size_t k = 1; k < out.pieces().size(); ++k) {
    EXPECT_EQ(out.pieces()[k - 1].end(), out.pieces()[k].start());
  }
  EXPECT_EQ(out.front(), (Point{-3, 0}));
  EXPECT_EQ(out.back(), (Point{3, 0}));
}

TEST(Splice, RejectsOverlapAndMismatch) {
  const Curve c = segment({-2, 0}, {2, 0});
  const Curve arc = boundary_path(kPlane, {0, 0}, 0.5, {-0.5, 0}, {0.5, 0});
  const Replacement overlap[] = {{0.375, 0.625, arc}, {0.5, 0.625, arc}};
  try {
    splice(kPlane, c, overlap);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverlappingWindows);
  }
  const Replacement shifted{0.3, 0.625, arc};
  try {
    splice(kPlane, c, std::span(&shifted, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEndpointMismatch);
  }
}

TEST(Curve, RestrictKeepsExactEndpoints) {
  const Point pts[] = {{0, 0}, {1, 1}, {2, 0}};
  const Curve c = Curve::polyline(kPlane, pts);
  const Curve r = c.restrict(0.25, 0.75);
  EXPECT_EQ(r.front(), c.evaluate(0.25));
  EXPECT_EQ(r.back(), c.evaluate(0.75));
  EXPECT_EQ(r.t_lo(), 0.25);
  EXPECT_EQ(r.t_hi(), 0.75);
}

}  // namespace
}  // namespace detour
