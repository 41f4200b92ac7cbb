#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "isoflect/error.hpp"

namespace isoflect {

inline constexpr double kPi = std::numbers::pi;

/// Point of I^3 in canonical coordinates (x, y, t); t is the isotropic height.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;

  Complex planar() const { return {x, y}; }
  static Point3 from(Complex z, double t) { return {z.real(), z.imag(), t}; }

  Point3& operator+=(const Point3& o) { x += o.x; y += o.y; t += o.t; return *this; }
  Point3& operator-=(const Point3& o) { x -= o.x; y -= o.y; t -= o.t; return *this; }
  Point3& operator*=(double s) { x *= s; y *= s; t *= s; return *this; }
  friend Point3 operator+(Point3 a, const Point3& b) { return a += b; }
  friend Point3 operator-(Point3 a, const Point3& b) { return a -= b; }
  friend Point3 operator*(Point3 a, double s) { return a *= s; }
  friend Point3 operator*(double s, Point3 a) { return a *= s; }
  friend Point3 operator-(Point3 a) { return a *= -1.0; }
  friend bool operator==(const Point3&, const Point3&) = default;

  double norm() const { return std::sqrt(x * x + y * y + t * t); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : t); }
};

inline double distance(const Point3& a, const Point3& b) { return (a - b).norm(); }

/// Axis-aligned rectangle in the parameter plane.
struct Rect {
  double re_min = 0.0, re_max = 0.0;
  double im_min = 0.0, im_max = 0.0;
};

}  // namespace isoflect
