#include "detour/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detour/error.hpp"

namespace detour {

ArcPiece make_arc(Point center, double radius, Point from, Point to, Point normal, double sweep) {
  Point offset = from - center;
  const double norm = euclidean_norm(offset);
  if (!(norm > 0.0)) throw Error(ErrorCode::kInvalidArgument, "arc start coincides with center");
  Point axis = (1.0 / norm) * offset;
  return ArcPiece{std::move(center), radius, std::move(from), std::move(to),
                  std::move(axis),   std::move(normal), sweep};
}

const Point& shape_start(const PieceShape& shape) {
  return std::visit(
      [](const auto& s) -> const Point& {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantPiece>) {
          return s.at;
        } else {
          return s.from;
        }
      },
      shape);
}

const Point& shape_end(const PieceShape& shape) {
  return std::visit(
      [](const auto& s) -> const Point& {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantPiece>) {
          return s.at;
        } else {
          return s.to;
        }
      },
      shape);
}

Point shape_at(const PieceShape& shape, double s) {
  return std::visit(
      [s](const auto& piece) -> Point {
        using T = std::decay_t<decltype(piece)>;
        if constexpr (std::is_same_v<T, ConstantPiece>) {
          return piece.at;
        } else if constexpr (std::is_same_v<T, LinearPiece>) {
          return lerp(piece.from, piece.to, s);
        } else {
          if (s <= 0.0) return piece.from;
          if (s >= 1.0) return piece.to;
          const double angle = s * piece.sweep;
          const double c = std::cos(angle);
          const double sn = std::sin(angle);
          Point out(piece.center.dim());
          for (std::size_t i = 0; i < out.dim(); ++i) {
            out[i] = piece.center[i] + piece.radius * (c * piece.axis[i] + sn * piece.normal[i]);
          }
          return out;
        }
      },
      shape);
}

double shape_length(const Space& space, const PieceShape& shape) {
  return std::visit(
      [&space](const auto& piece) -> double {
        using T = std::decay_t<decltype(piece)>;
        if constexpr (std::is_same_v<T, ConstantPiece>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, LinearPiece>) {
          return distance(space, piece.from, piece.to);
        } else {
          return piece.radius * piece.sweep;
        }
      },
      shape);
}

bool operator==(const LinearPiece& a, const LinearPiece& b) {
  return a.from == b.from && a.to == b.to;
}

bool operator==(const ArcPiece& a, const ArcPiece& b) {
  return a.center == b.center && a.radius == b.radius && a.from == b.from && a.to == b.to &&
         a.axis == b.axis && a.normal == b.normal && a.sweep == b.sweep;
}

bool operator==(const ConstantPiece& a, const ConstantPiece& b) { return a.at == b.at; }

bool operator==(const Piece& a, const Piece& b) {
  return a.t0 == b.t0 && a.t1 == b.t1 && a.shape == b.shape;
}

bool operator==(const Curve& a, const Curve& b) { return a.pieces_ == b.pieces_; }

Curve::Curve(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::kInvalidArgument, "curve without pieces");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    const bool constant = std::holds_alternative<ConstantPiece>(p.shape);
    if (!(p.t0 < p.t1) && !(constant && p.t0 == p.t1)) {
      throw Error(ErrorCode::kInvalidArgument, "piece " + std::to_string(i) +
                                                   " has an empty parameter range");
    }
    if (i == 0) continue;
    const Piece& prev = pieces_[i - 1];
    if (prev.t1 != p.t0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "parameter ranges of pieces " + std::to_string(i - 1) + " and " +
                      std::to_string(i) + " are not contiguous");
    }
    if (!(prev.end() == p.start())) {
      throw Error(ErrorCode::kEndpointMismatch, "pieces " + std::to_string(i - 1) + " and " +
                                                    std::to_string(i) + " do not share a joint: " +
                                                    format_point(prev.end()) + " vs " +
                                                    format_point(p.start()));
    }
  }
}

Curve Curve::constant(const Point& at, double t_lo, double t_hi) {
  return Curve({Piece{ConstantPiece{at}, t_lo, t_hi}});
}

Curve Curve::from_shapes(const Space& space, std::vector<PieceShape> shapes, double t_lo,
                         double t_hi) {
  if (shapes.empty()) throw Error(ErrorCode::kInvalidArgument, "curve without pieces");
  if (!(t_lo < t_hi)) throw Error(ErrorCode::kInvalidArgument, "empty parameter interval");
  std::vector<std::pair<PieceShape, double>> kept;
  double total = 0.0;
  for (auto& shape : shapes) {
    const double len = shape_length(space, shape);
    if (len > 0.0) {
      total += len;
      kept.emplace_back(std::move(shape), len);
    }
  }
  if (kept.empty()) return constant(shape_start(shapes.front()), t_lo, t_hi);

  std::vector<Piece> pieces;
  pieces.reserve(kept.size());
  double acc = 0.0;
  double t = t_lo;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    acc += kept[i].second;
    const double next = (i + 1 == kept.size()) ? t_hi : t_lo + (t_hi - t_lo) * (acc / total);
    pieces.push_back(Piece{std::move(kept[i].first), t, next});
    t = next;
  }
  return Curve(std::move(pieces));
}

Curve Curve::polyline(const Space& space, std::span<const Point> waypoints, double t_lo,
                      double t_hi) {
  if (waypoints.empty()) throw Error(ErrorCode::kInvalidArgument, "polyline without waypoints");
  for (const Point& w : waypoints) {
    space.require_compatible(w);
    if (!w.is_finite()) throw Error(ErrorCode::kInvalidArgument, "non-finite waypoint");
  }
  if (waypoints.size() == 1) return constant(waypoints.front(), t_lo, t_hi);
  std::vector<PieceShape> shapes;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    shapes.emplace_back(LinearPiece{waypoints[i], waypoints[i + 1]});
  }
  return from_shapes(space, std::move(shapes), t_lo, t_hi);
}

std::size_t Curve::piece_index(double t) const {
  if (!(t >= t_lo() && t <= t_hi())) {
    throw Error(ErrorCode::kOutOfRange, "parameter " + std::to_string(t) + " outside [" +
                                            std::to_string(t_lo()) + ", " +
                                            std::to_string(t_hi()) + "]");
  }
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                             [](const Piece& p, double value) { return p.t1 < value; });
  if (it == pieces_.end()) --it;
  return static_cast<std::size_t>(it - pieces_.begin());
}

Point Curve::evaluate(double t) const {
  const Piece& p = pieces_[piece_index(t)];
  if (t == p.t0) return p.start();
  if (t == p.t1) return p.end();
  return shape_at(p.shape, (t - p.t0) / (p.t1 - p.t0));
}

Point evaluate(const Curve& curve, double t) { return curve.evaluate(t); }

namespace {

// Portion of a shape between local parameters sa < sb with the given end
// points (already evaluated on the owning curve).
PieceShape slice_shape(const PieceShape& shape, double sa, double sb, Point from, Point to) {
  return std::visit(
      [&](const auto& piece) -> PieceShape {
        using T = std::decay_t<decltype(piece)>;
        if constexpr (std::is_same_v<T, ConstantPiece>) {
          return piece;
        } else if constexpr (std::is_same_v<T, LinearPiece>) {
          return LinearPiece{std::move(from), std::move(to)};
        } else {
          if (sa <= 0.0 && sb >= 1.0) return piece;
          const double start = sa * piece.sweep;
          Point normal = (-std::sin(start)) * piece.axis + std::cos(start) * piece.normal;
          return make_arc(piece.center, piece.radius, std::move(from), std::move(to),
                          std::move(normal), (sb - sa) * piece.sweep);
        }
      },
      shape);
}

}  // namespace

Curve Curve::restrict(double u, double v) const {
  if (!(u <= v)) throw Error(ErrorCode::kInvalidArgument, "restrict needs u <= v");
  const std::size_t first = piece_index(u);
  const std::size_t last = piece_index(v);
  if (u == v) return constant(evaluate(u), u, v);
  std::vector<Piece> out;
  for (std::size_t i = first; i <= last; ++i) {
    const Piece& p = pieces_[i];
    const double a = std::max(u, p.t0);
    const double b = std::min(v, p.t1);
    if (!(a < b)) continue;
    if (a == p.t0 && b == p.t1) {
      out.push_back(p);
      continue;
    }
    const double span = p.t1 - p.t0;
    out.push_back(Piece{slice_shape(p.shape, (a - p.t0) / span, (b - p.t0) / span, evaluate(a),
                                    evaluate(b)),
                        a, b});
  }
  return Curve(std::move(out));
}

std::vector<PieceShape> Curve::shapes() const {
  std::vector<PieceShape> out;
  out.reserve(pieces_.size());
  for (const Piece& p : pieces_) out.push_back(p.shape);
  return out;
}

std::vector<double> CrossingSet::parameters() const {
  std::vector<double> out;
  out.reserve(crossings.size());
  for (const Crossing& c : crossings) out.push_back(c.t);
  return out;
}

namespace {

constexpr double kLocalSlack = 1e-12;
constexpr int kBracketGrid = 64;

double local_to_global(const Piece& p, double s) {
  if (s <= 0.0) return p.t0;
  if (s >= 1.0) return p.t1;
  return p.t0 + s * (p.t1 - p.t0);
}

// Roots of |from + s (to - from) - c| = r for s in [0, 1].
std::vector<double> quadratic_roots(const LinearPiece& seg, const Point& center, double radius,
                                    double tol) {
  const Point d = seg.to - seg.from;
  const Point f = seg.from - center;
  const double a = dot(d, d);
  if (!(a > 0.0)) return {};
  const double b = 2.0 * dot(f, d);
  const double c = dot(f, f) - radius * radius;
  const double disc = b * b - 4.0 * a * c;
  std::vector<double> roots;
  if (disc <= 0.0) {
    // Tangency, possibly pushed slightly negative by rounding.
    const double s0 = -b / (2.0 * a);
    const Point p = lerp(seg.from, seg.to, s0);
    if (std::abs(euclidean_norm(p - center) - radius) <= tol) roots.push_back(s0);
  } else {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    roots.push_back(q / a);
    roots.push_back(c / q);
  }
  std::vector<double> out;
  for (double s : roots) {
    if (s >= -kLocalSlack && s <= 1.0 + kLocalSlack) out.push_back(std::clamp(s, 0.0, 1.0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Roots of max(|x - cx|, |y - cy|) = r along a segment, solved face by face.
std::vector<double> chebyshev_roots(const LinearPiece& seg, const Point& center, double radius) {
  const Point d = seg.to - seg.from;
  const Point f = seg.from - center;
  std::vector<double> out;
  const auto inside_other = [&](std::size_t j, double s) {
    return std::abs(f[j] + s * d[j]) <= radius * (1.0 + 1e-12);
  };
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t j = 1 - i;
    for (const double sign : {-1.0, 1.0}) {
      const double level = sign * radius;
      if (d[i] == 0.0) {
        if (f[i] != level) continue;
        // Segment runs along this face; report the ends of the contact.
        double lo = 0.0;
        double hi = 1.0;
        if (d[j] != 0.0) {
          double s1 = (-radius - f[j]) / d[j];
          double s2 = (radius - f[j]) / d[j];
          if (s1 > s2) std::swap(s1, s2);
          lo = std::max(lo, s1);
          hi = std::min(hi, s2);
        } else if (std::abs(f[j]) > radius) {
          continue;
        }
        if (lo <= hi) {
          out.push_back(lo);
          out.push_back(hi);
        }
        continue;
      }
      const double s = (level - f[i]) / d[i];
      if (s >= -kLocalSlack && s <= 1.0 + kLocalSlack && inside_other(j, s)) {
        out.push_back(std::clamp(s, 0.0, 1.0));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Sign-change bracketing on a grid followed by bisection.
std::vector<double> bracketed_roots(const Space& space, const PieceShape& shape,
                                    const Point& center, double radius, double sa, double sb,
                                    const CrossingTolerance& tol) {
  const auto g = [&](double s) { return distance(space, shape_at(shape, s), center) - radius; };
  std::vector<double> out;
  std::vector<double> nodes(kBracketGrid + 1);
  std::vector<double> values(kBracketGrid + 1);
  for (int i = 0; i <= kBracketGrid; ++i) {
    nodes[i] = (i == kBracketGrid) ? sb : sa + (sb - sa) * (static_cast<double>(i) / kBracketGrid);
    values[i] = g(nodes[i]);
  }
  for (int i = 0; i <= kBracketGrid; ++i) {
    if (std::abs(values[i]) <= tol.root) {
      out.push_back(nodes[i]);
      continue;
    }
    if (i == kBracketGrid) break;
    if (std::abs(values[i + 1]) <= tol.root) continue;
    if ((values[i] < 0.0) == (values[i + 1] < 0.0)) continue;
    double lo = nodes[i];
    double hi = nodes[i + 1];
    double glo = values[i];
    for (int it = 0; it < tol.max_bisections; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double gm = g(mid);
      if (gm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((gm < 0.0) == (glo < 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    out.push_back(std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi);
  }
  return out;
}

}  // namespace

CrossingSet sphere_crossings(const Curve& curve, const Space& space, const Point& center,
                             double radius, std::pair<double, double> window,
                             const CrossingTolerance& tol) {
  space.require_compatible(center);
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sphere radius must be positive");
  const auto [w1, w2] = window;
  if (!(w1 <= w2) || w1 < curve.t_lo() || w2 > curve.t_hi()) {
    throw Error(ErrorCode::kOutOfRange, "crossing window outside the curve's parameter range");
  }
  const auto residual = [&](double t) {
    return std::abs(distance(space, curve.evaluate(t), center) - radius);
  };

  CrossingSet result;
  const auto& pieces = curve.pieces();
  for (std::size_t i = curve.piece_index(w1); i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (p.t0 > w2) break;
    const double span = p.t1 - p.t0;
    const double sa = span > 0.0 ? std::clamp((w1 - p.t0) / span, 0.0, 1.0) : 0.0;
    const double sb = span > 0.0 ? std::clamp((w2 - p.t0) / span, 0.0, 1.0) : 1.0;

    std::vector<double> local;
    CrossingSolver solver = CrossingSolver::kBisection;
    if (const auto* seg = std::get_if<LinearPiece>(&p.shape)) {
      if (space.kind() == SpaceKind::kChebyshev) {
        local = chebyshev_roots(*seg, center, radius);
        solver = CrossingSolver::kCasewise;
      } else {
        local = quadratic_roots(*seg, center, radius, tol.root);
        solver = CrossingSolver::kQuadratic;
      }
    } else if (const auto* at = std::get_if<ConstantPiece>(&p.shape)) {
      if (std::abs(distance(space, at->at, center) - radius) <= tol.root) local = {sa, sb};
      solver = CrossingSolver::kContact;
    } else {
      local = bracketed_roots(space, p.shape, center, radius, sa, sb, tol);
    }

    for (double s : local) {
      const double t = local_to_global(p, s);
      if (t < w1 || t > w2) continue;
      if (residual(t) > tol.root) continue;
      result.crossings.push_back(Crossing{t, i, solver});
    }
  }

  std::sort(result.crossings.begin(), result.crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
  // Roots on a joint are reported by both neighbouring pieces.
  auto& cs = result.crossings;
  cs.erase(std::unique(cs.begin(), cs.end(),
                       [](const Crossing& a, const Crossing& b) {
                         return std::abs(a.t - b.t) <= 1e-12 * (1.0 + std::abs(a.t));
                       }),
           cs.end());
  return result;
}

double first_crossing(const Curve& curve, const Space& space, const Point& center, double radius,
                      std::pair<double, double> window, const CrossingTolerance& tol) {
  const CrossingSet set = sphere_crossings(curve, space, center, radius, window, tol);
  if (set.empty()) {
    throw Error(ErrorCode::kNoCrossing, "sphere of radius " + std::to_string(radius) +
                                            " around " + format_point(center) +
                                            " is not met in the window");
  }
  return set.crossings.front().t;
}

double last_crossing(const Curve& curve, const Space& space, const Point& center, double radius,
                     std::pair<double, double> window, const CrossingTolerance& tol) {
  const CrossingSet set = sphere_crossings(curve, space, center, radius, window, tol);
  if (set.empty()) {
    throw Error(ErrorCode::kNoCrossing, "sphere of radius " + std::to_string(radius) +
                                            " around " + format_point(center) +
                                            " is not met in the window");
  }
  return set.crossings.back().t;
}

Curve splice(const Space& space, const Curve& curve, std::span<const Replacement> replacements) {
  if (replacements.empty()) return curve;
  double cursor = curve.t_lo();
  bool first = true;
  for (const Replacement& r : replacements) {
    if (!(r.u < r.v)) throw Error(ErrorCode::kOverlappingWindows, "splice window with u >= v");
    if (!(r.u > curve.t_lo()) || !(r.v < curve.t_hi())) {
      throw Error(ErrorCode::kOutOfRange, "splice window not strictly inside the curve's range");
    }
    if (!first && !(r.u > cursor)) {
      throw Error(ErrorCode::kOverlappingWindows, "splice windows overlap or are unsorted");
    }
    if (!(r.insert.front() == curve.evaluate(r.u)) || !(r.insert.back() == curve.evaluate(r.v))) {
      throw Error(ErrorCode::kEndpointMismatch,
                  "inserted curve does not start and end on the replaced window");
    }
    cursor = r.v;
    first = false;
  }

  std::vector<PieceShape> shapes;
  const auto append = [&shapes](const Curve& c) {
    for (const Piece& p : c.pieces()) shapes.push_back(p.shape);
  };
  cursor = curve.t_lo();
  for (const Replacement& r : replacements) {
    append(curve.restrict(cursor, r.u));
    append(r.insert);
    cursor = r.v;
  }
  append(curve.restrict(cursor, curve.t_hi()));
  return Curve::from_shapes(space, std::move(shapes), curve.t_lo(), curve.t_hi());
}

}  // namespace detour
