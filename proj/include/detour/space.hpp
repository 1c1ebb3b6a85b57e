#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <variant>

#include "detour/point.hpp"

namespace detour {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class SpaceKind { kEuclidean, kChebyshev, kLine };

std::string_view to_string(SpaceKind kind);

/// A metric space together with the knowledge of whether its spheres are
/// path-connected. Only the three shipped metrics are supported.
class Space {
 public:
  static Space euclidean(std::size_t dim);
  static Space chebyshev();
  static Space line();

  SpaceKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }

  /// True when every sphere of positive radius is non-empty and
  /// path-connected. Fails for every one-dimensional space, whose spheres
  /// are two-point sets.
  bool has_connected_spheres() const noexcept { return dim_ >= 2; }

  void require_compatible(const Point& p) const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  Space(SpaceKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  SpaceKind kind_ = SpaceKind::kEuclidean;
  std::size_t dim_ = 2;
};

double distance(const Space& space, const Point& p, const Point& q);

struct WholeSpace {};

struct BallShape {
  Point center;
  double radius = 1.0;
  bool open = false;
};

struct BoxShape {
  Point min;
  Point max;
};

/// The region U that paths must stay inside.
class Domain {
 public:
  using Shape = std::variant<WholeSpace, BallShape, BoxShape>;

  static Domain all(const Space& space);
  static Domain ball(const Space& space, Point center, double radius, bool open = false);
  static Domain box(const Space& space, Point min, Point max);

  const Space& space() const noexcept { return space_; }
  const Shape& shape() const noexcept { return shape_; }

 private:
  Domain(Space space, Shape shape) : space_(space), shape_(std::move(shape)) {}

  Space space_;
  Shape shape_;
};

bool contains(const Domain& domain, const Point& p);

/// Distance from p to the complement of U, or kInfinity for the whole
/// space. Throws NotInterior unless the result is strictly positive.
double interior_radius(const Domain& domain, const Point& p);

}  // namespace detour
