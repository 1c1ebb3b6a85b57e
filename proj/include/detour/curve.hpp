#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "detour/point.hpp"
#include "detour/space.hpp"

namespace detour {

struct LinearPiece {
  Point from;
  Point to;
};

/// Circular arc on a euclidean sphere. The arc lives in the plane spanned by
/// `axis` = (from - center)/|from - center| and the unit vector `normal`
/// orthogonal to it, and sweeps `sweep` radians from `from` towards `normal`.
struct ArcPiece {
  Point center;
  double radius = 0.0;
  Point from;
  Point to;
  Point axis;
  Point normal;
  double sweep = 0.0;
};

struct ConstantPiece {
  Point at;
};

using PieceShape = std::variant<LinearPiece, ArcPiece, ConstantPiece>;

/// Builds an arc, deriving `axis` from the stored endpoints so that a
/// serialized arc reconstructs bit-identically.
ArcPiece make_arc(Point center, double radius, Point from, Point to, Point normal, double sweep);

const Point& shape_start(const PieceShape& shape);
const Point& shape_end(const PieceShape& shape);
Point shape_at(const PieceShape& shape, double s);
double shape_length(const Space& space, const PieceShape& shape);

struct Piece {
  PieceShape shape;
  double t0 = 0.0;
  double t1 = 1.0;

  const Point& start() const { return shape_start(shape); }
  const Point& end() const { return shape_end(shape); }
};

/// Continuous piecewise parametric curve over [t_lo, t_hi].
class Curve {
 public:
  /// Takes pieces with explicit parameter ranges. Throws EndpointMismatch
  /// when adjacent pieces do not share an endpoint exactly, InvalidArgument
  /// when the ranges are not contiguous.
  explicit Curve(std::vector<Piece> pieces);

  /// Parameterizes the shapes proportionally to their length in `space`
  /// over [t_lo, t_hi]. Zero-length shapes are dropped; an all-degenerate
  /// input yields a single constant piece.
  static Curve from_shapes(const Space& space, std::vector<PieceShape> shapes, double t_lo = 0.0,
                           double t_hi = 1.0);
  static Curve polyline(const Space& space, std::span<const Point> waypoints, double t_lo = 0.0,
                        double t_hi = 1.0);
  static Curve constant(const Point& at, double t_lo = 0.0, double t_hi = 1.0);

  double t_lo() const { return pieces_.front().t0; }
  double t_hi() const { return pieces_.back().t1; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Point& front() const { return pieces_.front().start(); }
  const Point& back() const { return pieces_.back().end(); }
  std::size_t dim() const { return front().dim(); }

  /// Index of the piece whose range holds t (the earlier piece at a joint).
  std::size_t piece_index(double t) const;

  Point evaluate(double t) const;

  /// The same curve restricted to [u, v], keeping the parameterization.
  Curve restrict(double u, double v) const;

  std::vector<PieceShape> shapes() const;

  friend bool operator==(const Curve&, const Curve&);

 private:
  std::vector<Piece> pieces_;
};

bool operator==(const LinearPiece&, const LinearPiece&);
bool operator==(const ArcPiece&, const ArcPiece&);
bool operator==(const ConstantPiece&, const ConstantPiece&);
bool operator==(const Piece&, const Piece&);

Point evaluate(const Curve& curve, double t);

enum class CrossingSolver { kQuadratic, kCasewise, kBisection, kContact };

struct Crossing {
  double t = 0.0;
  std::size_t piece = 0;
  CrossingSolver solver = CrossingSolver::kBisection;
};

/// Parameters where the curve meets the sphere d(., center) = radius.
struct CrossingSet {
  std::vector<Crossing> crossings;

  bool empty() const { return crossings.empty(); }
  std::size_t size() const { return crossings.size(); }
  std::vector<double> parameters() const;
};

struct CrossingTolerance {
  double root = 1e-10;
  int max_bisections = 200;
};

CrossingSet sphere_crossings(const Curve& curve, const Space& space, const Point& center,
                             double radius, std::pair<double, double> window,
                             const CrossingTolerance& tol = {});

/// Smallest / largest crossing parameter in the window. Throws NoCrossing
/// when the sphere is not met there.
double first_crossing(const Curve& curve, const Space& space, const Point& center, double radius,
                      std::pair<double, double> window, const CrossingTolerance& tol = {});
double last_crossing(const Curve& curve, const Space& space, const Point& center, double radius,
                     std::pair<double, double> window, const CrossingTolerance& tol = {});

struct Replacement {
  double u = 0.0;
  double v = 0.0;
  Curve insert;
};

/// Replaces each window [u, v] of the curve by the inserted curve and
/// reparameterizes by length over the original interval.
Curve splice(const Space& space, const Curve& curve, std::span<const Replacement> replacements);

}  // namespace detour
