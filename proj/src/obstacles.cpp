#include "detour/obstacles.hpp"

#include <algorithm>
#include <cmath>

#include "detour/error.hpp"

namespace detour {

namespace {

constexpr long long kMaxLatticeQuery = 4'000'000;

}  // namespace

ObstacleSet ObstacleSet::finite(std::vector<Point> points) {
  ObstacleSet set;
  set.points_ = std::move(points);
  return set;
}

ObstacleSet ObstacleSet::generator(RegionQuery query) {
  if (!query) throw Error(ErrorCode::kInvalidArgument, "empty region query");
  ObstacleSet set;
  set.query_ = std::move(query);
  return set;
}

ObstacleSet ObstacleSet::lattice(const Space& space, double step, Point origin) {
  space.require_compatible(origin);
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidArgument, "lattice step must be positive");
  }
  RegionQuery query = [space, step, origin](const Point& center, double radius) {
    const std::size_t n = origin.dim();
    std::vector<long long> lo(n);
    std::vector<long long> hi(n);
    long long count = 1;
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = static_cast<long long>(std::ceil((center[i] - radius - origin[i]) / step));
      hi[i] = static_cast<long long>(std::floor((center[i] + radius - origin[i]) / step));
      if (hi[i] < lo[i]) return std::vector<Obstacle>{};
      count *= hi[i] - lo[i] + 1;
      if (count > kMaxLatticeQuery) {
        throw Error(ErrorCode::kGeneratorFailure, "lattice query region too large");
      }
    }
    std::vector<Obstacle> out;
    std::vector<long long> idx = lo;
    while (true) {
      Point p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = origin[i] + step * static_cast<double>(idx[i]);
      if (distance(space, p, center) <= radius) out.push_back(Obstacle{std::move(p), step});
      std::size_t k = 0;
      while (k < n && ++idx[k] > hi[k]) {
        idx[k] = lo[k];
        ++k;
      }
      if (k == n) break;
    }
    return out;
  };
  ObstacleSet set = generator(std::move(query));
  set.lattice_ = LatticeSpec{step, std::move(origin)};
  return set;
}

std::vector<Obstacle> ObstacleSet::all(const Space& space) const {
  if (!is_finite()) {
    throw Error(ErrorCode::kInvalidArgument, "generator obstacle sets cannot be enumerated");
  }
  std::vector<Obstacle> out;
  out.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    double iso = kInfinity;
    for (std::size_t j = 0; j < points_.size(); ++j) {
      if (i != j) iso = std::min(iso, distance(space, points_[i], points_[j]));
    }
    out.push_back(Obstacle{points_[i], iso});
  }
  return out;
}

std::vector<Obstacle> ObstacleSet::query(const Space& space, const Point& center,
                                         double radius) const {
  if (is_finite()) {
    std::vector<Obstacle> out;
    for (Obstacle& o : all(space)) {
      if (distance(space, o.point, center) <= radius) out.push_back(std::move(o));
    }
    return out;
  }
  std::vector<Obstacle> out = query_(center, radius);
  for (const Obstacle& o : out) {
    space.require_compatible(o.point);
    if (!(o.isolation > 0.0)) {
      throw Error(ErrorCode::kGeneratorFailure,
                  "generator returned " + format_point(o.point) + " without an isolation radius");
    }
  }
  return out;
}

}  // namespace detour
