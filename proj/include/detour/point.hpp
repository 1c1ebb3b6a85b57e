#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace detour {

/// A point of the ambient space, stored as plain coordinates.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  explicit Point(std::size_t dim) : coords_(dim, 0.0) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  bool is_finite() const;

  // Bitwise coordinate equality; joints and endpoints are compared this way.
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& a);
double dot(const Point& a, const Point& b);
double euclidean_norm(const Point& a);

/// a + s * (b - a), returning a and b exactly at s = 0 and s = 1.
Point lerp(const Point& a, const Point& b, double s);

std::string format_point(const Point& p);

}  // namespace detour
