#include "detour/svg.hpp"

#include <algorithm>
#include <sstream>

#include "detour/error.hpp"

namespace detour {

namespace {

struct Bounds {
  double x0 = kInfinity, y0 = kInfinity, x1 = -kInfinity, y1 = -kInfinity;

  void add(const Point& p, double pad = 0.0) {
    x0 = std::min(x0, p[0] - pad);
    y0 = std::min(y0, p[1] - pad);
    x1 = std::max(x1, p[0] + pad);
    y1 = std::max(y1, p[1] + pad);
  }
};

std::vector<Point> trace(const Curve& curve) {
  std::vector<Point> out{curve.front()};
  for (const Piece& p : curve.pieces()) {
    const int steps = std::holds_alternative<ArcPiece>(p.shape) ? 48 : 1;
    for (int i = 1; i <= steps; ++i) out.push_back(shape_at(p.shape, static_cast<double>(i) / steps));
  }
  return out;
}

void polyline(std::ostringstream& os, const std::vector<Point>& pts, const char* color,
              double width) {
  os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
     << "\" stroke-linejoin=\"round\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << pts[i][0] << ',' << pts[i][1];
  os << "\"/>\n";
}

}  // namespace

std::string render_svg(const RepairProblem& problem, const Curve& repaired,
                       const DetourRadii& radii) {
  if (problem.space.dim() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "plots need a two-dimensional space");
  }
  const bool square_balls = problem.space.kind() == SpaceKind::kChebyshev;
  const std::vector<Obstacle> obstacles = relevant_obstacles(problem, problem.path);

  // The viewBox is fitted to U when U is bounded, else to the drawn items.
  Bounds b;
  std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, BallShape>) {
          b.add(shape.center, shape.radius);
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          b.add(shape.min);
          b.add(shape.max);
        } else {
          for (const Point& p : trace(problem.path)) b.add(p);
          for (const Point& p : trace(repaired)) b.add(p);
          for (const Obstacle& o : obstacles) b.add(o.point);
        }
      },
      problem.domain.shape());
  const double span = std::max({b.x1 - b.x0, b.y1 - b.y0, 1e-9});
  const double margin = 0.05 * span;
  b.x0 -= margin;
  b.y0 -= margin;
  b.x1 += margin;
  b.y1 += margin;
  const double thin = span / 500.0;
  const double thick = span / 150.0;
  const double cross = span / 80.0;

  std::ostringstream os;
  os.precision(10);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\""
     << b.x0 << ' ' << -b.y1 << ' ' << (b.x1 - b.x0) << ' ' << (b.y1 - b.y0) << "\">\n";
  os << "<g transform=\"scale(1,-1)\">\n";
  std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, BallShape>) {
          if (square_balls) {
            os << "  <rect x=\"" << shape.center[0] - shape.radius << "\" y=\""
               << shape.center[1] - shape.radius << "\" width=\"" << 2 * shape.radius
               << "\" height=\"" << 2 * shape.radius;
          } else {
            os << "  <circle cx=\"" << shape.center[0] << "\" cy=\"" << shape.center[1]
               << "\" r=\"" << shape.radius;
          }
          os << "\" fill=\"#f4f7fb\" stroke=\"#7a8ca3\" stroke-width=\"" << thin << "\"/>\n";
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          os << "  <rect x=\"" << shape.min[0] << "\" y=\"" << shape.min[1] << "\" width=\""
             << shape.max[0] - shape.min[0] << "\" height=\"" << shape.max[1] - shape.min[1]
             << "\" fill=\"#f4f7fb\" stroke=\"#7a8ca3\" stroke-width=\"" << thin << "\"/>\n";
        }
      },
      problem.domain.shape());

  for (const RadiusEntry& e : radii.entries) {
    const Point& c = e.obstacle;
    if (square_balls) {
      os << "  <rect x=\"" << c[0] - e.delta << "\" y=\"" << c[1] - e.delta << "\" width=\""
         << 2 * e.delta << "\" height=\"" << 2 * e.delta;
    } else {
      os << "  <circle cx=\"" << c[0] << "\" cy=\"" << c[1] << "\" r=\"" << e.delta;
    }
    os << "\" fill=\"none\" stroke=\"#c9822b\" stroke-dasharray=\"" << 2 * thin << ' ' << 2 * thin
       << "\" stroke-width=\"" << thin << "\"/>\n";
  }

  polyline(os, trace(problem.path), "#9aa5b1", thin);
  polyline(os, trace(repaired), "#1f5fbf", thick);

  for (const Obstacle& o : obstacles) {
    const double x = o.point[0];
    const double y = o.point[1];
    if (x < b.x0 || x > b.x1 || y < b.y0 || y > b.y1) continue;
    os << "  <path stroke=\"#b3261e\" stroke-width=\"" << thin << "\" d=\"M" << x - cross << ','
       << y - cross << " L" << x + cross << ',' << y + cross << " M" << x - cross << ','
       << y + cross << " L" << x + cross << ',' << y - cross << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace detour
