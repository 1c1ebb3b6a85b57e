#include "detour/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detour/error.hpp"

namespace detour {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotInterior: return "NotInterior";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kOffBoundary: return "OffBoundary";
    case ErrorCode::kNoCrossing: return "NoCrossing";
    case ErrorCode::kOverlappingWindows: return "OverlappingWindows";
    case ErrorCode::kEndpointMismatch: return "EndpointMismatch";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kEndpointOnObstacle: return "EndpointOnObstacle";
    case ErrorCode::kDuplicateObstacle: return "DuplicateObstacle";
    case ErrorCode::kPathOutsideDomain: return "PathOutsideDomain";
    case ErrorCode::kScheduleOverlap: return "ScheduleOverlap";
    case ErrorCode::kOracleContractViolation: return "OracleContractViolation";
    case ErrorCode::kGeneratorFailure: return "GeneratorFailure";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

bool Point::is_finite() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double c) { return std::isfinite(c); });
}

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "points of dimension " + std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  }
}

}  // namespace

Point operator+(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Point out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

Point operator-(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Point out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

Point operator*(double s, const Point& a) {
  Point out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = s * a[i];
  return out;
}

double dot(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a[i] * b[i];
  return sum;
}

double euclidean_norm(const Point& a) {
  double sum = 0.0;
  for (double c : a.coords()) sum += c * c;
  return std::sqrt(sum);
}

Point lerp(const Point& a, const Point& b, double s) {
  if (s <= 0.0) return a;
  if (s >= 1.0) return b;
  require_same_dim(a, b);
  Point out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + s * (b[i] - a[i]);
  return out;
}

std::string format_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) os << ", ";
    os << p[i];
  }
  os << ')';
  return os.str();
}

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kEuclidean: return "euclidean";
    case SpaceKind::kChebyshev: return "chebyshev";
    case SpaceKind::kLine: return "line";
  }
  return "unknown";
}

Space Space::euclidean(std::size_t dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "euclidean space needs dim >= 1");
  return Space(SpaceKind::kEuclidean, dim);
}

Space Space::chebyshev() { return Space(SpaceKind::kChebyshev, 2); }

Space Space::line() { return Space(SpaceKind::kLine, 1); }

void Space::require_compatible(const Point& p) const {
  if (p.dim() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point " + format_point(p) + " in " + std::string(to_string(kind_)) + "(" +
                    std::to_string(dim_) + ")");
  }
}

double distance(const Space& space, const Point& p, const Point& q) {
  space.require_compatible(p);
  space.require_compatible(q);
  switch (space.kind()) {
    case SpaceKind::kChebyshev: {
      double m = 0.0;
      for (std::size_t i = 0; i < p.dim(); ++i) m = std::max(m, std::abs(p[i] - q[i]));
      return m;
    }
    case SpaceKind::kLine:
      return std::abs(p[0] - q[0]);
    case SpaceKind::kEuclidean:
      break;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double d = p[i] - q[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

Domain Domain::all(const Space& space) { return Domain(space, WholeSpace{}); }

Domain Domain::ball(const Space& space, Point center, double radius, bool open) {
  space.require_compatible(center);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidArgument, "domain ball radius must be positive and finite");
  }
  return Domain(space, BallShape{std::move(center), radius, open});
}

Domain Domain::box(const Space& space, Point min, Point max) {
  space.require_compatible(min);
  space.require_compatible(max);
  for (std::size_t i = 0; i < min.dim(); ++i) {
    if (!(min[i] < max[i])) {
      throw Error(ErrorCode::kInvalidArgument, "domain box needs min < max in every coordinate");
    }
  }
  return Domain(space, BoxShape{std::move(min), std::move(max)});
}

bool contains(const Domain& domain, const Point& p) {
  domain.space().require_compatible(p);
  return std::visit(
      [&](const auto& shape) -> bool {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return true;
        } else if constexpr (std::is_same_v<T, BallShape>) {
          const double d = distance(domain.space(), shape.center, p);
          return shape.open ? d < shape.radius : d <= shape.radius;
        } else {
          for (std::size_t i = 0; i < p.dim(); ++i) {
            if (p[i] < shape.min[i] || p[i] > shape.max[i]) return false;
          }
          return true;
        }
      },
      domain.shape());
}

double interior_radius(const Domain& domain, const Point& p) {
  domain.space().require_compatible(p);
  // In every shipped metric the distance to the complement of a ball is
  // R - d(p, c), and to the complement of a box the smallest face gap.
  const double eps = std::visit(
      [&](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return kInfinity;
        } else if constexpr (std::is_same_v<T, BallShape>) {
          return shape.radius - distance(domain.space(), shape.center, p);
        } else {
          double gap = kInfinity;
          for (std::size_t i = 0; i < p.dim(); ++i) {
            gap = std::min({gap, p[i] - shape.min[i], shape.max[i] - p[i]});
          }
          return gap;
        }
      },
      domain.shape());
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::kNotInterior, format_point(p) + " is not an interior point of U");
  }
  return eps;
}

}  // namespace detour
